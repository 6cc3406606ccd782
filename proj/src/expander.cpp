#include "hamdec/expander.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hamdec/rng.hpp"
#include "json.hpp"

namespace hamdec {

ExpanderParams::ExpanderParams(Rational nu_, Rational tau_) : nu(nu_), tau(tau_) {
  if (!(Rational(0) < nu && nu <= tau && tau < Rational(1)))
    throw std::invalid_argument("expansion parameters need 0 < nu <= tau < 1, got nu=" +
                                nu.str() + " tau=" + tau.str());
}

ExpanderParams default_expander_params(int n) {
  // n = 1 would give nu = 1, outside the valid parameter range
  if (n < 2) throw std::invalid_argument("default parameters need at least 2 vertices");
  long long up = (n + 19) / 20;
  Rational nu(up, n);
  // tiny graphs push nu above the usual tau = 1/5; keep nu <= tau total
  return ExpanderParams(nu, std::max(Rational(1, 5), nu));
}

namespace {

// Threshold for "at least nu*n in-neighbours": ceil(nu*n), which keeps exact
// ties when nu*n is an integer.
int rn_threshold(int n, const Rational& nu) {
  Rational t = nu * Rational(n);
  long long c = t.ceil();
  return (int)c;
}

// |S| with tau*n <= |S| <= (1-tau)*n, as an inclusive integer range (empty
// when lo > hi).
std::pair<int, int> size_window(int n, const Rational& tau) {
  Rational lo = tau * Rational(n);
  Rational hi = (Rational(1) - tau) * Rational(n);
  return {(int)lo.ceil(), (int)hi.floor()};
}

}  // namespace

std::vector<int> robust_out_neighbourhood(const Digraph& g, const std::vector<int>& s,
                                          const Rational& nu) {
  if (nu <= Rational(0) || nu >= Rational(1))
    throw std::invalid_argument("nu must lie strictly between 0 and 1");
  std::vector<char> in_s((size_t)g.n(), 0);
  for (int v : s) {
    if (v < 0 || v >= g.n()) throw std::invalid_argument("set vertex out of range");
    in_s[(size_t)v] = 1;
  }
  int t = rn_threshold(g.n(), nu);
  std::vector<int> rn;
  for (int x = 0; x < g.n(); ++x) {
    int count = 0;
    for (int u : g.in_neighbours(x))
      if (in_s[(size_t)u]) ++count;
    if (count >= t) rn.push_back(x);
  }
  return rn;
}

namespace {

struct ScanContext {
  int n;
  int threshold;
  // violation when rn * nu_den < |S| * nu_den + nu_num * n
  long long nu_num, nu_den;
  std::vector<uint32_t> in_mask;  // in-neighbour bitmask per vertex (n <= 26ish)
};

ScanContext make_context(const Digraph& g, const ExpanderParams& p) {
  ScanContext ctx;
  ctx.n = g.n();
  ctx.threshold = rn_threshold(g.n(), p.nu);
  ctx.nu_num = p.nu.num();
  ctx.nu_den = p.nu.den();
  ctx.in_mask.assign((size_t)g.n(), 0);
  for (int v = 0; v < g.n(); ++v) {
    uint32_t m = 0;
    for (int u : g.in_neighbours(v)) m |= (1u << u);
    ctx.in_mask[(size_t)v] = m;
  }
  return ctx;
}

int rn_size_of_mask(const ScanContext& ctx, uint32_t mask) {
  int rn = 0;
  for (int x = 0; x < ctx.n; ++x)
    if (std::popcount(ctx.in_mask[(size_t)x] & mask) >= ctx.threshold) ++rn;
  return rn;
}

bool violates(const ScanContext& ctx, int set_size, int rn) {
  // rn < |S| + nu*n  <=>  rn*den < |S|*den + num*n
  return (__int128)rn * ctx.nu_den < (__int128)set_size * ctx.nu_den + (__int128)ctx.nu_num * ctx.n;
}

std::vector<int> mask_to_set(uint32_t mask) {
  std::vector<int> s;
  for (int v = 0; mask; ++v, mask >>= 1)
    if (mask & 1) s.push_back(v);
  return s;
}

constexpr size_t kViolationCap = 100;

void scan_range(const ScanContext& ctx, uint64_t begin, uint64_t end, int lo, int hi,
                std::vector<ExpansionViolation>& out, long long& checked, bool& truncated) {
  for (uint64_t m = begin; m < end; ++m) {
    int size = std::popcount((uint32_t)m);
    if (size < lo || size > hi) continue;
    ++checked;
    int rn = rn_size_of_mask(ctx, (uint32_t)m);
    if (violates(ctx, size, rn)) {
      if (out.size() < kViolationCap)
        out.push_back({mask_to_set((uint32_t)m), rn});
      else
        truncated = true;
    }
  }
}

ExpanderCertificate certify_exhaustive(const Digraph& g, const ExpanderParams& p,
                                       const CertifyOptions& opt) {
  ExpanderCertificate cert;
  cert.nu = p.nu;
  cert.tau = p.tau;
  cert.mode = CertMode::exhaustive;
  if (g.n() > opt.exhaustive_cap)
    throw std::invalid_argument("exhaustive certification refused: " + std::to_string(g.n()) +
                                " vertices exceeds the cap of " +
                                std::to_string(opt.exhaustive_cap) +
                                " (raise the cap or use sampling explicitly)");
  if (g.n() > 30)
    throw std::invalid_argument("exhaustive certification is limited to 30 vertices");
  auto ctx = make_context(g, p);
  auto [lo, hi] = size_window(g.n(), p.tau);
  uint64_t total = 1ull << g.n();

  int jobs = std::max(1, std::min(opt.jobs, (int)std::thread::hardware_concurrency()));
  if (jobs <= 1 || total < (1u << 16)) {
    scan_range(ctx, 0, total, lo, hi, cert.violations, cert.subsets_checked,
               cert.violations_truncated);
  } else {
    std::vector<std::vector<ExpansionViolation>> vio((size_t)jobs);
    std::vector<long long> cnt((size_t)jobs, 0);
    std::vector<char> trunc((size_t)jobs, 0);
    std::vector<std::thread> workers;
    uint64_t chunk = (total + (uint64_t)jobs - 1) / (uint64_t)jobs;
    for (int j = 0; j < jobs; ++j) {
      uint64_t b = chunk * (uint64_t)j, e = std::min(total, b + chunk);
      workers.emplace_back([&, j, b, e] {
        bool t = false;
        scan_range(ctx, b, e, lo, hi, vio[(size_t)j], cnt[(size_t)j], t);
        trunc[(size_t)j] = t;
      });
    }
    for (auto& w : workers) w.join();
    // merge in range order so the certificate is independent of thread timing
    for (int j = 0; j < jobs; ++j) {
      cert.subsets_checked += cnt[(size_t)j];
      if (trunc[(size_t)j]) cert.violations_truncated = true;
      for (auto& v : vio[(size_t)j]) {
        if (cert.violations.size() < kViolationCap)
          cert.violations.push_back(std::move(v));
        else
          cert.violations_truncated = true;
      }
    }
  }
  cert.pass = cert.violations.empty() && !cert.violations_truncated;
  return cert;
}

ExpanderCertificate certify_sampled(const Digraph& g, const ExpanderParams& p,
                                    const CertifyOptions& opt) {
  ExpanderCertificate cert;
  cert.nu = p.nu;
  cert.tau = p.tau;
  cert.mode = CertMode::sampled;
  cert.samples = opt.samples;
  cert.seed = opt.seed;
  auto [lo, hi] = size_window(g.n(), p.tau);
  if (lo > hi) {
    cert.pass = true;  // empty window: the condition is vacuous
    return cert;
  }
  int t = rn_threshold(g.n(), p.nu);
  Rng rng(derive_seed(opt.seed, 0x73616d70ULL));  // "samp"
  std::vector<char> in_s((size_t)g.n(), 0);
  for (uint64_t i = 0; i < opt.samples; ++i) {
    int size = lo + rng.below(hi - lo + 1);
    auto s = rng.subset(g.n(), size);
    std::fill(in_s.begin(), in_s.end(), 0);
    for (int v : s) in_s[(size_t)v] = 1;
    int rn = 0;
    for (int x = 0; x < g.n(); ++x) {
      int count = 0;
      for (int u : g.in_neighbours(x))
        if (in_s[(size_t)u]) ++count;
      if (count >= t) ++rn;
    }
    ++cert.subsets_checked;
    if ((__int128)rn * p.nu.den() < (__int128)size * p.nu.den() + (__int128)p.nu.num() * g.n()) {
      if (cert.violations.size() < kViolationCap)
        cert.violations.push_back({s, rn});
      else
        cert.violations_truncated = true;
    }
  }
  cert.pass = cert.violations.empty() && !cert.violations_truncated;
  return cert;
}

ExpanderCertificate certify_degree(const Digraph& g, const ExpanderParams& p) {
  ExpanderCertificate cert;
  cert.nu = p.nu;
  cert.tau = p.tau;
  cert.mode = CertMode::degree_implied;
  auto rep = validate(g);
  // The degree conditions guarantee robust outexpansion asymptotically; the
  // smallest eps compatible with each condition's hypotheses given (nu, tau)
  // is used.  Oriented graphs get the weaker 3n/2 total-degree condition.
  if (rep.oriented) {
    Rational eps = p.tau * Rational(2);
    if (degree_condition_oriented(g, eps)) {
      cert.pass = true;
      cert.note = "oriented degree condition with eps=" + eps.str();
      return cert;
    }
  }
  Rational eps = std::max(p.tau, Rational(2) * p.nu / p.tau);
  if (eps < Rational(1) && degree_condition_digraph(g, eps)) {
    cert.pass = true;
    cert.note = "semidegree condition with eps=" + eps.str();
    return cert;
  }
  cert.pass = false;
  cert.note = "no degree condition applies";
  return cert;
}

}  // namespace

ExpanderCertificate certify(const Digraph& g, const ExpanderParams& p, CertMode mode,
                            const CertifyOptions& opt) {
  if (g.n() < 1) throw std::invalid_argument("certification needs a nonempty graph");
  switch (mode) {
    case CertMode::exhaustive: return certify_exhaustive(g, p, opt);
    case CertMode::sampled: return certify_sampled(g, p, opt);
    case CertMode::degree_implied: return certify_degree(g, p);
  }
  throw std::logic_error("unreachable");
}

bool degree_condition_oriented(const Digraph& g, const Rational& eps) {
  auto rep = validate(g);
  if (!rep.oriented)
    throw std::invalid_argument("oriented degree condition on a graph with digons or parallel edges");
  // min-out + min-in + min-total >= 3n/2 + eps*n, compared exactly
  Rational lhs = Rational(rep.min_out) + Rational(rep.min_in) + Rational(rep.min_total);
  Rational rhs = Rational(3 * (long long)g.n(), 2) + eps * Rational(g.n());
  return lhs >= rhs;
}

bool degree_condition_digraph(const Digraph& g, const Rational& eps) {
  auto rep = validate(g);
  Rational lhs = Rational(std::min(rep.min_out, rep.min_in));
  Rational rhs = (Rational(1, 2) + eps) * Rational(g.n());
  return lhs >= rhs;
}

Digraph blow_up(const Digraph& g, int r) {
  if (r < 1) throw std::invalid_argument("blow-up factor must be positive");
  Digraph out(g.n() * r, g.multi());
  for (auto [u, v] : g.edges())
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) out.add_edge(u * r + i, v * r + j);
  return out;
}

ExpanderParams blow_up_params(const ExpanderParams& p) {
  if (Rational(3) * p.nu > p.tau)
    throw std::invalid_argument("blow-up guarantee needs 3*nu <= tau");
  return ExpanderParams(p.nu * p.nu * p.nu, Rational(2) * p.tau);
}

std::string certificate_to_json(const ExpanderCertificate& c) {
  nlohmann::ordered_json j;
  j["nu"] = c.nu.str();
  j["tau"] = c.tau.str();
  switch (c.mode) {
    case CertMode::exhaustive: j["mode"] = "exhaustive"; break;
    case CertMode::sampled: j["mode"] = "sampled"; break;
    case CertMode::degree_implied: j["mode"] = "degree"; break;
  }
  j["verdict"] = c.pass ? "pass" : "fail";
  if (c.mode == CertMode::sampled) {
    j["samples"] = c.samples;
    j["seed"] = c.seed;
  }
  j["subsets_checked"] = c.subsets_checked;
  if (!c.note.empty()) j["note"] = c.note;
  if (c.params_default) j["params_default"] = true;
  auto viol = nlohmann::ordered_json::array();
  for (const auto& v : c.violations) viol.push_back({{"set", v.set}, {"rn_size", v.rn_size}});
  j["violations"] = viol;
  j["violations_truncated"] = c.violations_truncated;
  return j.dump();
}

}  // namespace hamdec
