// Configuration model: n cells of d points, point p in cell p / d, and a
// uniform perfect matching of the dn points.

#pragma once

#include <cstdint>
#include <vector>

#include "kstar/graph.hpp"
#include "kstar/numeric.hpp"

namespace kstar {

struct Pairing {
  int n = 0;
  int d = 0;
  std::vector<int> partner;  // partner[p] = point matched with p

  int cell(int point) const { return point / d; }
  bool valid() const;
};

// M(2a) = (2a)! / (a! 2^a)
BigInt m_pairings(long a);

// Uniform over all M(dn) pairings; deterministic in seed.
Pairing sample_pairing(int n, int d, std::uint64_t seed);

// Edge i joins the cells of the i-th pair, pairs ordered by smaller point.
Multigraph project(const Pairing& p);

// X_1..X_m: loops, parallel-edge pairs, then j-cycles counted per edge subset.
std::vector<long> count_cycles(const Multigraph& g, int m);

struct SimpleSample {
  Multigraph graph;
  int tries = 0;
};

// Rejection sampling; try t uses seed derive_seed({seed, t}).
// Throws std::runtime_error after max_tries rejections.
SimpleSample sample_simple_graph(int n, int d, std::uint64_t seed, int max_tries = 100000);

}  // namespace kstar
