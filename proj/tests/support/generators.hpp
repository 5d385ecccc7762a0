// Hand-rolled generators for property tests.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kstar/graph.hpp"
#include "kstar/numeric.hpp"
#include "kstar/pairing.hpp"
#include "kstar/polyexact.hpp"
#include "kstar/random.hpp"

namespace kstar {

// Canonical rational from numerator and denominator.
inline Rational rat(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace kstar

namespace kstar::gen {

inline int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

inline Rational small_rational(Rng& rng, int max_num, int max_den) {
  Rational q(uniform_int(rng, -max_num, max_num), uniform_int(rng, 1, max_den));
  q.canonicalize();
  return q;
}

struct PlantedPolynomial {
  RationalPolynomial poly;
  std::vector<Rational> roots;  // with multiplicity
};

// Product of (x - r_i) times a positive-definite quadratic factor when `complex_pair`.
inline PlantedPolynomial planted_polynomial(Rng& rng, int max_roots, bool complex_pair) {
  PlantedPolynomial out;
  out.poly = RationalPolynomial::constant(Rational(uniform_int(rng, 1, 5)));
  const int count = uniform_int(rng, 1, max_roots);
  for (int i = 0; i < count; ++i) {
    Rational r = small_rational(rng, 20, 7);
    out.roots.push_back(r);
    // Occasionally repeat the root to exercise square-free reduction.
    if (rng.below(5) == 0 && static_cast<int>(out.roots.size()) < max_roots) out.roots.push_back(r);
  }
  for (const auto& r : out.roots) out.poly *= RationalPolynomial({-r, Rational(1)});
  if (complex_pair) {
    const Rational c = small_rational(rng, 5, 3);
    out.poly *= RationalPolynomial({c * c + Rational(uniform_int(rng, 1, 4)), -2 * c, Rational(1)});
  }
  return out;
}

// Simple d-regular graph on n vertices sampled from the configuration model.
inline Multigraph regular_graph(int n, int d, std::uint64_t seed) { return sample_simple_graph(n, d, seed, 5000000).graph; }

// Random simple graph with edge probability num/den.
inline Multigraph random_graph(Rng& rng, int n, int num, int den) {
  Multigraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (static_cast<int>(rng.below(static_cast<std::uint64_t>(den))) < num) g.add_edge(u, v);
  return g;
}

// Random connected simple graph: a random spanning tree plus extra edges.
inline Multigraph random_connected_graph(Rng& rng, int n, int extra) {
  Multigraph g(n);
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  auto link = [&](int u, int v) {
    if (u == v || adj[u][v]) return;
    adj[u][v] = adj[v][u] = true;
    g.add_edge(u, v);
  };
  for (int v = 1; v < n; ++v) link(v, uniform_int(rng, 0, v - 1));
  for (int i = 0; i < extra; ++i) link(uniform_int(rng, 0, n - 1), uniform_int(rng, 0, n - 1));
  return g;
}

}  // namespace kstar::gen
