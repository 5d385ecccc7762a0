#include "kstar/pairing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kstar/random.hpp"

namespace kstar {

bool Pairing::valid() const {
  if (n < 0 || d < 0 || partner.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(d)) return false;
  const int total = static_cast<int>(partner.size());
  for (int p = 0; p < total; ++p) {
    const int q = partner[static_cast<std::size_t>(p)];
    if (q < 0 || q >= total || q == p || partner[static_cast<std::size_t>(q)] != p) return false;
  }
  return true;
}

BigInt m_pairings(long a) {
  if (a < 0) throw std::invalid_argument("m_pairings: negative argument");
  BigInt r = 1;
  for (long i = 1; i < 2 * a; i += 2) r *= i;  // (2a-1)!!
  return r;
}

Pairing sample_pairing(int n, int d, std::uint64_t seed) {
  if (n < 0 || d < 0) throw std::invalid_argument("sample_pairing: negative n or d");
  const long total = static_cast<long>(n) * d;
  if (total % 2 != 0)
    throw std::invalid_argument("sample_pairing: dn must be even, got d=" + std::to_string(d) + " n=" + std::to_string(n));
  std::vector<int> points(static_cast<std::size_t>(total));
  std::iota(points.begin(), points.end(), 0);
  Rng rng(seed);
  rng.shuffle(points.begin(), points.end());
  Pairing p{n, d, std::vector<int>(points.size())};
  for (std::size_t i = 0; i < points.size(); i += 2) {
    p.partner[static_cast<std::size_t>(points[i])] = points[i + 1];
    p.partner[static_cast<std::size_t>(points[i + 1])] = points[i];
  }
  return p;
}

Multigraph project(const Pairing& p) {
  Multigraph g(p.n);
  for (int a = 0; a < static_cast<int>(p.partner.size()); ++a) {
    const int b = p.partner[static_cast<std::size_t>(a)];
    if (b > a) g.add_edge(p.cell(a), p.cell(b));
  }
  return g;
}

namespace {

struct CycleCounter {
  // Underlying simple graph with edge multiplicities, loops dropped.
  std::vector<std::vector<std::pair<int, long>>> nbr;
  std::vector<std::map<int, long>> mult;
  std::vector<char> on_path;
  std::vector<long> found;  // found[len], both directions
  int max_len = 0;
  int start = 0;

  void dfs(int v, int len, long weight) {
    for (const auto& [w, m] : nbr[static_cast<std::size_t>(v)]) {
      if (w == start && len >= 3) {
        found[static_cast<std::size_t>(len)] += weight * m;
        continue;
      }
      if (w <= start || on_path[static_cast<std::size_t>(w)] || len == max_len) continue;
      on_path[static_cast<std::size_t>(w)] = 1;
      dfs(w, len + 1, weight * m);
      on_path[static_cast<std::size_t>(w)] = 0;
    }
  }
};

}  // namespace

std::vector<long> count_cycles(const Multigraph& g, int m) {
  if (m < 1) throw std::invalid_argument("count_cycles: m must be >= 1");
  std::vector<long> x(static_cast<std::size_t>(m), 0);
  x[0] = g.loop_count();
  if (m >= 2) x[1] = g.parallel_pair_count();
  if (m < 3) return x;

  const int n = g.vertex_count();
  CycleCounter cc;
  cc.mult.resize(static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    ++cc.mult[static_cast<std::size_t>(e.u)][e.v];
    ++cc.mult[static_cast<std::size_t>(e.v)][e.u];
  }
  cc.nbr.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    for (const auto& [w, c] : cc.mult[static_cast<std::size_t>(v)]) cc.nbr[static_cast<std::size_t>(v)].emplace_back(w, c);
  cc.on_path.assign(static_cast<std::size_t>(n), 0);
  cc.found.assign(static_cast<std::size_t>(m) + 1, 0);
  cc.max_len = m;
  for (int s = 0; s < n; ++s) {
    cc.start = s;
    cc.on_path[static_cast<std::size_t>(s)] = 1;
    cc.dfs(s, 1, 1);
    cc.on_path[static_cast<std::size_t>(s)] = 0;
  }
  for (int j = 3; j <= m; ++j) x[static_cast<std::size_t>(j - 1)] = cc.found[static_cast<std::size_t>(j)] / 2;
  return x;
}

SimpleSample sample_simple_graph(int n, int d, std::uint64_t seed, int max_tries) {
  if (max_tries < 1) throw std::invalid_argument("sample_simple_graph: max_tries must be >= 1");
  for (int t = 0; t < max_tries; ++t) {
    Multigraph g = project(sample_pairing(n, d, derive_seed({seed, static_cast<std::uint64_t>(t)})));
    if (is_simple(g)) return {std::move(g), t + 1};
  }
  throw std::runtime_error("no simple graph after " + std::to_string(max_tries) + " tries (n=" + std::to_string(n) +
                           ", d=" + std::to_string(d) + ")");
}

}  // namespace kstar
