#pragma once

#include <cstdint>
#include <vector>

#include "hamdec/digraph.hpp"

namespace hamdec {

// All ordered pairs (u, v), u != v.
Digraph complete_digraph(int n);

// Circulant digraph on Z_n with edges i -> i+d for each offset d.  With
// offsets {1..(n-1)/2} (odd n) this is the regular rotational tournament.
Digraph rotational_tournament(int n, const std::vector<int>& offsets);

// Uniformly random orientation of each pair, deterministic per seed.
Digraph random_tournament(int n, uint64_t seed);

// r-regular spanning subdigraph of a random dense supergraph; infeasible
// draws are retried with derived seeds.  Deterministic per (n, r, seed).
Digraph random_regular_digraph(int n, int r, uint64_t seed);

}  // namespace hamdec
