#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace hamdec {

// All randomized code funnels through this wrapper so results are a pure
// function of the seed.  std::mt19937_64's output sequence is pinned by the
// standard; the distributions are hand-rolled because the standard library's
// are not portable across implementations.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for (seed, stream-id), e.g. one per trial or restart.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }
  bool coin() { return eng_() & 1; }

  // Uniform in [0, n).  Modulo bias is ~n/2^64, irrelevant at this scale.
  int below(int n) { return (int)(eng_() % (uint64_t)n); }

  double unit() { return (double)(eng_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (int i = (int)v.size() - 1; i > 0; --i) {
      int j = below(i + 1);
      std::swap(v[i], v[(size_t)j]);
    }
  }

  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    shuffle(p);
    return p;
  }

  // Sorted k-subset of {0..n-1} via partial Fisher-Yates.
  std::vector<int> subset(int n, int k);

 private:
  std::mt19937_64 eng_;
};

inline std::vector<int> Rng::subset(int n, int k) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    int j = i + below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace hamdec
