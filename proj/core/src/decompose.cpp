#include "kstar/decompose.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <stdexcept>

#include "flow.hpp"
#include "kstar/random.hpp"

namespace kstar {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

}  // namespace

std::string explain_invalid(const Multigraph& g, const StarDecomposition& s, int k) {
  if (k < 1) return "k must be positive";
  std::vector<int> seen(idx(g.edge_count()), 0);
  for (std::size_t si = 0; si < s.stars.size(); ++si) {
    const Star& star = s.stars[si];
    const std::string label = "star " + std::to_string(si);
    if (star.center < 0 || star.center >= g.vertex_count()) return label + ": centre out of range";
    if (static_cast<int>(star.edges.size()) != k)
      return label + ": has " + std::to_string(star.edges.size()) + " edges, expected " + std::to_string(k);
    std::set<int> leaves;
    for (int e : star.edges) {
      if (e < 0 || e >= g.edge_count()) return label + ": edge id out of range";
      const Edge& edge = g.edge(e);
      if (edge.is_loop()) return label + ": contains a loop";
      if (edge.u != star.center && edge.v != star.center)
        return label + ": edge " + std::to_string(e) + " not incident to its centre";
      if (!leaves.insert(edge.other(star.center)).second) return label + ": repeated leaf";
      if (++seen[idx(e)] > 1) return "edge " + std::to_string(e) + " used twice";
    }
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (seen[idx(e)] == 0) return "edge " + std::to_string(e) + " not covered";
  }
  return "";
}

bool verify(const Multigraph& g, const StarDecomposition& s, int k) { return explain_invalid(g, s, k).empty(); }

std::optional<Orientation> orientation_in_bounds(const Multigraph& g, const std::vector<int>& lo,
                                                 const std::vector<int>& hi) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  if (lo.size() != idx(n) || hi.size() != idx(n)) throw std::invalid_argument("bounds size must equal |V|");
  long lo_sum = 0, hi_sum = 0;
  for (int v = 0; v < n; ++v) {
    if (lo[idx(v)] > hi[idx(v)] || hi[idx(v)] < 0) return std::nullopt;
    lo_sum += std::max(0, lo[idx(v)]);
    hi_sum += std::min(hi[idx(v)], g.degree(v));
  }
  if (lo_sum > m || hi_sum < m) return std::nullopt;

  // Nodes: s, t, edges, vertices, super source, super sink.
  const int s = 0, t = 1, e0 = 2, v0 = 2 + m, ss = 2 + m + n, tt = ss + 1;
  detail::MaxFlow flow(tt + 1);
  std::vector<long> excess(idx(tt + 1), 0);
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> handles;
  handles.reserve(idx(m));
  for (int e = 0; e < m; ++e) {
    excess[idx(e0 + e)] += 1;  // s -> e with bounds [1, 1]
    excess[idx(s)] -= 1;
    const Edge& edge = g.edge(e);
    auto hu = flow.add_arc(e0 + e, v0 + edge.u, 1);
    auto hv = flow.add_arc(e0 + e, v0 + edge.v, 1);
    handles.push_back({hu, hv});
  }
  for (int v = 0; v < n; ++v) {
    const int l = std::max(0, lo[idx(v)]);
    const int h = std::min(hi[idx(v)], g.degree(v));
    if (h < l) return std::nullopt;
    if (h > l) flow.add_arc(v0 + v, t, h - l);
    excess[idx(t)] += l;
    excess[idx(v0 + v)] -= l;
  }
  flow.add_arc(t, s, m);
  long need = 0;
  for (int x = 0; x < ss; ++x) {
    if (excess[idx(x)] > 0) {
      flow.add_arc(ss, x, excess[idx(x)]);
      need += excess[idx(x)];
    } else if (excess[idx(x)] < 0) {
      flow.add_arc(x, tt, -excess[idx(x)]);
    }
  }
  if (flow.run(ss, tt) != need) return std::nullopt;
  Orientation o;
  o.head.resize(idx(m));
  o.indegree.assign(idx(n), 0);
  for (int e = 0; e < m; ++e) {
    const Edge& edge = g.edge(e);
    o.head[idx(e)] = flow.flow_on(handles[idx(e)].first) > 0 ? edge.u : edge.v;
    ++o.indegree[idx(o.head[idx(e)])];
  }
  return o;
}

std::optional<Orientation> orientation_feasible(const Multigraph& g, const std::vector<int>& targets) {
  if (targets.size() != idx(g.vertex_count())) throw std::invalid_argument("targets size must equal |V|");
  const long sum = std::accumulate(targets.begin(), targets.end(), 0L);
  if (sum != g.edge_count())
    throw std::invalid_argument("targets sum to " + std::to_string(sum) + ", |E| = " + std::to_string(g.edge_count()));
  return orientation_in_bounds(g, targets, targets);
}

StarDecomposition orientation_to_stars(const Multigraph& g, const Orientation& o, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::vector<std::vector<int>> in(idx(g.vertex_count()));
  for (int e = 0; e < g.edge_count(); ++e) in[idx(o.head[idx(e)])].push_back(e);
  StarDecomposition out;
  out.k = k;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& edges = in[idx(v)];
    if (edges.size() % idx(k) != 0)
      throw std::invalid_argument("in-degree of vertex " + std::to_string(v) + " is not a multiple of k");
    for (std::size_t i = 0; i < edges.size(); i += idx(k))
      out.stars.push_back({v, std::vector<int>(edges.begin() + static_cast<long>(i), edges.begin() + static_cast<long>(i + idx(k)))});
  }
  return out;
}

namespace {

bool edges_connected(const Multigraph& g) {
  const auto [comp, count] = g.components();
  int with_edges = -1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) continue;
    if (with_edges == -1) with_edges = comp[idx(v)];
    if (comp[idx(v)] != with_edges) return false;
  }
  return true;
}

}  // namespace

StarDecomposition eulerian_stars(const Multigraph& g, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!edges_connected(g)) throw std::invalid_argument("eulerian_stars needs a connected graph");
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % 2 != 0 || (g.degree(v) / 2) % k != 0)
      throw std::invalid_argument("eulerian_stars needs every degree even with k | deg/2 (vertex " +
                                  std::to_string(v) + ")");
  }
  Orientation o;
  o.head.assign(idx(g.edge_count()), -1);
  o.indegree.assign(idx(g.vertex_count()), 0);
  std::vector<std::size_t> next(idx(g.vertex_count()), 0);
  std::vector<char> used(idx(g.edge_count()), 0);
  for (int start = 0; start < g.vertex_count(); ++start) {
    if (g.degree(start) == 0) continue;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int v = stack.back();
      const auto& inc = g.incident(v);
      auto& i = next[idx(v)];
      while (i < inc.size() && used[idx(inc[i].edge)]) ++i;
      if (i == inc.size()) {
        stack.pop_back();
        continue;
      }
      const auto [w, e] = inc[i];
      used[idx(e)] = 1;
      o.head[idx(e)] = w;
      ++o.indegree[idx(w)];
      stack.push_back(w);
    }
    break;  // connected: one circuit covers every edge
  }
  return orientation_to_stars(g, o, k);
}

StarDecomposition two_star_decompose(const Multigraph& g) {
  if (g.edge_count() % 2 != 0) throw std::invalid_argument("two_star_decompose needs an even number of edges");
  if (!edges_connected(g)) throw std::invalid_argument("two_star_decompose needs a connected graph");
  if (g.loop_count() > 0) throw std::invalid_argument("two_star_decompose needs a loopless graph");
  StarDecomposition out;
  out.k = 2;
  if (g.edge_count() == 0) return out;
  const int n = g.vertex_count();
  int root = 0;
  while (g.degree(root) == 0) ++root;
  // Iterative DFS for a post-order and parent tree edges.
  std::vector<int> parent_edge(idx(n), -1), order;
  std::vector<char> seen(idx(n), 0);
  std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
  seen[idx(root)] = 1;
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    const auto& inc = g.incident(v);
    if (i == inc.size()) {
      order.push_back(v);
      stack.pop_back();
      continue;
    }
    const auto [w, e] = inc[i++];
    if (!seen[idx(w)]) {
      seen[idx(w)] = 1;
      parent_edge[idx(w)] = e;
      stack.push_back({w, 0});
    }
  }
  std::vector<char> used(idx(g.edge_count()), 0);
  for (int v : order) {
    std::vector<int> free;
    for (const auto& inc : g.incident(v)) {
      if (!used[idx(inc.edge)] && inc.edge != parent_edge[idx(v)]) free.push_back(inc.edge);
    }
    if (free.size() % 2 == 1) free.push_back(parent_edge[idx(v)]);  // root always has an even count
    for (std::size_t i = 0; i + 1 < free.size(); i += 2) {
      used[idx(free[i])] = used[idx(free[i + 1])] = 1;
      out.stars.push_back({v, {free[i], free[i + 1]}});
    }
  }
  return out;
}

std::string to_string(SolveMode m) {
  switch (m) {
    case SolveMode::exact:
      return "exact";
    case SolveMode::heuristic:
      return "heuristic";
    case SolveMode::automatic:
      return "auto";
  }
  return "auto";
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::found:
      return "found";
    case SolveStatus::proven_none:
      return "proven-none";
    case SolveStatus::unknown:
      return "unknown";
  }
  return "unknown";
}

SolveMode parse_solve_mode(const std::string& s) {
  if (s == "exact") return SolveMode::exact;
  if (s == "heuristic") return SolveMode::heuristic;
  if (s == "auto") return SolveMode::automatic;
  throw std::invalid_argument("unknown solve mode '" + s + "' (exact|heuristic|auto)");
}

namespace {

using Clock = std::chrono::steady_clock;

struct ComponentOutcome {
  SolveStatus status = SolveStatus::unknown;
  std::optional<Orientation> orientation;
  std::string method;
  std::string reason;
  long nodes = 0;
};

// Branch and bound over per-vertex in-degree targets (multiples of k).
class TargetSearch {
 public:
  TargetSearch(const Multigraph& g, int k, long node_cap, Clock::time_point deadline, Rng* rng)
      : g_(g), k_(k), node_cap_(node_cap), deadline_(deadline), rng_(rng) {
    const int n = g.vertex_count();
    target_.assign(idx(n), -1);
    zero_nbrs_.assign(idx(n), 0);
    binary_ = true;
    for (int v = 0; v < n; ++v) {
      max_target_.push_back(g.degree(v) / k * k);
      if (max_target_.back() > k) binary_ = false;
    }
    if (binary_) zeros_total_ = n - g.edge_count() / k;
  }

  // true: decided (result_ set or proven none); false: aborted.
  bool run() {
    dfs();
    return !aborted_;
  }
  const std::optional<Orientation>& result() const { return result_; }
  long nodes() const { return nodes_; }

 private:
  bool bounds(std::vector<int>& lo, std::vector<int>& hi) const {
    const int n = g_.vertex_count();
    lo.assign(idx(n), 0);
    hi.assign(idx(n), 0);
    for (int v = 0; v < n; ++v) {
      if (target_[idx(v)] >= 0) {
        lo[idx(v)] = hi[idx(v)] = target_[idx(v)];
        continue;
      }
      hi[idx(v)] = max_target_[idx(v)];
      if (zero_nbrs_[idx(v)] > 0) {
        if (max_target_[idx(v)] < k_) return false;
        lo[idx(v)] = k_;
      }
    }
    return true;
  }

  // Upper bound on further zeros: candidates minus a greedy matching among them.
  bool zero_count_ok() const {
    if (!binary_) return true;
    const int n = g_.vertex_count();
    int zeros = 0, candidates = 0;
    std::vector<char> cand(idx(n), 0);
    for (int v = 0; v < n; ++v) {
      if (target_[idx(v)] == 0) ++zeros;
      if (target_[idx(v)] < 0 && zero_nbrs_[idx(v)] == 0) {
        cand[idx(v)] = 1;
        ++candidates;
      }
    }
    if (zeros > zeros_total_) return false;
    std::vector<char> matched(idx(n), 0);
    int matching = 0;
    for (int v = 0; v < n; ++v) {
      if (!cand[idx(v)] || matched[idx(v)]) continue;
      for (const auto& inc : g_.incident(v)) {
        const int w = inc.neighbor;
        if (cand[idx(w)] && !matched[idx(w)] && w != v) {
          matched[idx(v)] = matched[idx(w)] = 1;
          ++matching;
          break;
        }
      }
    }
    return zeros + candidates - matching >= zeros_total_;
  }

  int pick() const {
    int best = -1;
    for (int v = 0; v < g_.vertex_count(); ++v) {
      if (target_[idx(v)] >= 0) continue;
      if (best < 0 || zero_nbrs_[idx(v)] > zero_nbrs_[idx(best)] ||
          (zero_nbrs_[idx(v)] == zero_nbrs_[idx(best)] && g_.degree(v) > g_.degree(best)))
        best = v;
    }
    return best;
  }

  void assign(int v, int value) {
    target_[idx(v)] = value;
    if (value == 0)
      for (const auto& inc : g_.incident(v)) ++zero_nbrs_[idx(inc.neighbor)];
  }
  void unassign(int v) {
    if (target_[idx(v)] == 0)
      for (const auto& inc : g_.incident(v)) --zero_nbrs_[idx(inc.neighbor)];
    target_[idx(v)] = -1;
  }

  bool dfs() {
    if (aborted_) return false;
    if (++nodes_ > node_cap_ || ((nodes_ & 255) == 0 && Clock::now() > deadline_)) {
      aborted_ = true;
      return false;
    }
    std::vector<int> lo, hi;
    if (!bounds(lo, hi) || !zero_count_ok()) return false;
    auto relaxed = orientation_in_bounds(g_, lo, hi);
    if (!relaxed) return false;
    const int v = pick();
    if (v < 0) {
      result_ = std::move(relaxed);
      return true;
    }
    std::vector<int> values;
    for (int t = zero_nbrs_[idx(v)] > 0 ? k_ : 0; t <= max_target_[idx(v)]; t += k_) values.push_back(t);
    if (rng_) rng_->shuffle(values.begin(), values.end());
    for (int t : values) {
      assign(v, t);
      const bool ok = dfs();
      unassign(v);
      if (ok) return true;
      if (aborted_) return false;
    }
    return false;
  }

  const Multigraph& g_;
  int k_;
  long node_cap_;
  Clock::time_point deadline_;
  Rng* rng_;
  std::vector<int> target_, zero_nbrs_, max_target_;
  bool binary_ = false;
  int zeros_total_ = 0;
  long nodes_ = 0;
  bool aborted_ = false;
  std::optional<Orientation> result_;
};

std::optional<Orientation> check_leaves(const Multigraph& g, int k, const std::vector<char>& leaf) {
  std::vector<int> targets(idx(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) targets[idx(v)] = leaf[idx(v)] ? 0 : k;
  if (std::accumulate(targets.begin(), targets.end(), 0L) != g.edge_count()) return std::nullopt;
  return orientation_feasible(g, targets);
}

// Every degree < 2k: random greedy independent leaf set plus leaf swaps.
std::optional<Orientation> leaf_swap_heuristic(const Multigraph& g, int k, const SolveOptions& opt,
                                               Clock::time_point deadline, long& work) {
  const int n = g.vertex_count();
  const int zeros = n - g.edge_count() / k;
  if (zeros < 0) return std::nullopt;
  Rng rng(derive_seed({opt.seed, 0x1eafULL}));
  for (int restart = 0; restart < opt.heuristic_restarts && Clock::now() < deadline; ++restart) {
    std::vector<int> order(idx(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order.begin(), order.end());
    std::vector<char> leaf(idx(n), 0);
    std::vector<int> blocked(idx(n), 0);
    int count = 0;
    auto add = [&](int v) {
      leaf[idx(v)] = 1;
      ++count;
      for (const auto& inc : g.incident(v)) ++blocked[idx(inc.neighbor)];
    };
    auto remove = [&](int v) {
      leaf[idx(v)] = 0;
      --count;
      for (const auto& inc : g.incident(v)) --blocked[idx(inc.neighbor)];
    };
    for (int v : order) {
      if (count == zeros) break;
      if (!leaf[idx(v)] && blocked[idx(v)] == 0) add(v);
    }
    for (int step = 0; step < 4 * n; ++step) {
      if (count == zeros) {
        ++work;
        if (auto o = check_leaves(g, k, leaf)) return o;
      }
      // Swap: drop a random leaf, then greedily add free vertices.
      std::vector<int> leaves;
      for (int v = 0; v < n; ++v)
        if (leaf[idx(v)]) leaves.push_back(v);
      if (!leaves.empty()) remove(leaves[rng.below(leaves.size())]);
      rng.shuffle(order.begin(), order.end());
      for (int v : order) {
        if (count == zeros) break;
        if (!leaf[idx(v)] && blocked[idx(v)] == 0) add(v);
      }
    }
  }
  return std::nullopt;
}

ComponentOutcome solve_component(const Multigraph& g, int k, const SolveOptions& opt, Clock::time_point deadline) {
  ComponentOutcome out;
  const int m = g.edge_count();
  if (m % k != 0) {
    out.status = SolveStatus::proven_none;
    out.method = "divisibility";
    out.reason = "a connected component has " + std::to_string(m) + " edges, not divisible by k=" + std::to_string(k);
    return out;
  }
  auto found = [&](Orientation o, const std::string& method) {
    out.status = SolveStatus::found;
    out.orientation = std::move(o);
    out.method = method;
    return out;
  };
  if (k == 1) {
    Orientation o;
    o.indegree.assign(idx(g.vertex_count()), 0);
    for (const auto& e : g.edges()) {
      o.head.push_back(e.v);
      ++o.indegree[idx(e.v)];
    }
    return found(std::move(o), "trivial");
  }
  bool eulerian = true;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) % 2 != 0 || (g.degree(v) / 2) % k != 0) eulerian = false;
  auto to_orientation = [&](const StarDecomposition& s) {
    Orientation o;
    o.head.assign(idx(m), -1);
    o.indegree.assign(idx(g.vertex_count()), 0);
    for (const auto& star : s.stars)
      for (int e : star.edges) {
        o.head[idx(e)] = star.center;
        ++o.indegree[idx(star.center)];
      }
    return o;
  };
  if (eulerian) return found(to_orientation(eulerian_stars(g, k)), "eulerian");
  if (k == 2) return found(to_orientation(two_star_decompose(g)), "two-star");

  bool binary = true;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) >= 2 * k) binary = false;

  if (opt.mode != SolveMode::heuristic) {
    TargetSearch search(g, k, opt.node_cap, deadline, nullptr);
    const bool decided = search.run();
    out.nodes += search.nodes();
    if (search.result()) return found(*search.result(), "exact");
    if (decided) {
      out.status = SolveStatus::proven_none;
      out.method = "exact";
      out.reason = "no in-degree assignment in {0, k, 2k, ...} admits an orientation";
      return out;
    }
    if (opt.mode == SolveMode::exact) {
      out.status = SolveStatus::unknown;
      out.method = "exact";
      out.reason = "node cap or time limit reached";
      return out;
    }
  }
  const Clock::time_point heuristic_deadline =
      opt.mode == SolveMode::heuristic ? deadline : std::max(deadline, Clock::now() + std::chrono::seconds(1));
  if (binary) {
    long work = 0;
    auto o = leaf_swap_heuristic(g, k, opt, heuristic_deadline, work);
    out.nodes += work;
    if (o) return found(std::move(*o), "heuristic");
  } else {
    Rng rng(derive_seed({opt.seed, 0x5eedULL}));
    for (int r = 0; r < opt.heuristic_restarts && Clock::now() < heuristic_deadline; ++r) {
      TargetSearch search(g, k, 2000, heuristic_deadline, &rng);
      search.run();
      out.nodes += search.nodes();
      if (search.result()) return found(*search.result(), "heuristic");
    }
  }
  out.status = SolveStatus::unknown;
  out.method = "heuristic";
  out.reason = "heuristic found no decomposition";
  return out;
}

}  // namespace

SolveResult solve(const Multigraph& g, int k, const SolveOptions& options) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!is_simple(g)) throw std::invalid_argument("solve accepts simple graphs only (loops or parallel edges present)");
  if (options.node_cap < 1 || options.time_limit_seconds <= 0 || options.heuristic_restarts < 1)
    throw std::invalid_argument("solver caps must be positive");
  SolveResult result;
  if (g.edge_count() % k != 0) {
    result.status = SolveStatus::proven_none;
    result.reason = "k=" + std::to_string(k) + " does not divide |E|=" + std::to_string(g.edge_count());
    result.stats.method = "divisibility";
    return result;
  }
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.time_limit_seconds));
  const auto [comp, count] = g.components();
  std::vector<std::vector<int>> members(idx(count));
  for (int v = 0; v < g.vertex_count(); ++v) members[idx(comp[idx(v)])].push_back(v);
  std::vector<std::vector<int>> comp_edges(idx(count));
  for (int e = 0; e < g.edge_count(); ++e) comp_edges[idx(comp[idx(g.edge(e).u)])].push_back(e);

  StarDecomposition merged;
  merged.k = k;
  bool unknown = false;
  std::vector<std::string> methods;
  for (int c = 0; c < count; ++c) {
    if (comp_edges[idx(c)].empty()) continue;
    std::vector<int> local(idx(g.vertex_count()), -1);
    for (std::size_t i = 0; i < members[idx(c)].size(); ++i) local[idx(members[idx(c)][i])] = static_cast<int>(i);
    Multigraph sub(static_cast<int>(members[idx(c)].size()));
    for (int e : comp_edges[idx(c)]) sub.add_edge(local[idx(g.edge(e).u)], local[idx(g.edge(e).v)]);
    ComponentOutcome oc = solve_component(sub, k, options, deadline);
    result.stats.nodes += oc.nodes;
    methods.push_back(oc.method);
    if (oc.status == SolveStatus::proven_none) {
      result.status = SolveStatus::proven_none;
      result.reason = oc.reason;
      result.stats.method = oc.method;
      return result;
    }
    if (oc.status == SolveStatus::unknown) {
      unknown = true;
      result.reason = oc.reason;
      continue;
    }
    for (const Star& s : orientation_to_stars(sub, *oc.orientation, k).stars) {
      Star mapped{members[idx(c)][idx(s.center)], {}};
      for (int e : s.edges) mapped.edges.push_back(comp_edges[idx(c)][idx(e)]);
      merged.stars.push_back(std::move(mapped));
    }
  }
  for (std::size_t i = 0; i < methods.size(); ++i) result.stats.method += (i ? "," : "") + methods[i];
  if (unknown) {
    result.status = SolveStatus::unknown;
    return result;
  }
  std::sort(merged.stars.begin(), merged.stars.end(), [](const Star& a, const Star& b) {
    return a.center != b.center ? a.center < b.center : a.edges < b.edges;
  });
  result.status = SolveStatus::found;
  result.decomposition = std::move(merged);
  return result;
}

}  // namespace kstar
