// Dinic max-flow on small integer networks.

#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace kstar::detail {

class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

  // Returns a handle for flow_on.
  std::pair<int, int> add_arc(int from, int to, long cap) {
    auto& out = adj_[static_cast<std::size_t>(from)];
    auto& in = adj_[static_cast<std::size_t>(to)];
    out.push_back({to, cap, static_cast<int>(in.size()), cap});
    in.push_back({from, 0, static_cast<int>(out.size()) - 1, 0});
    return {from, static_cast<int>(out.size()) - 1};
  }

  long flow_on(std::pair<int, int> handle) const {
    const Arc& a = adj_[static_cast<std::size_t>(handle.first)][static_cast<std::size_t>(handle.second)];
    return a.original - a.cap;
  }

  long run(int s, int t) {
    long total = 0;
    while (bfs(s, t)) {
      iter_.assign(adj_.size(), 0);
      while (long f = dfs(s, t, std::numeric_limits<long>::max())) total += f;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    long cap;
    int rev;
    long original;
  };

  bool bfs(int s, int t) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const Arc& a : adj_[static_cast<std::size_t>(v)]) {
        if (a.cap > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
          level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(v)] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  long dfs(int v, int t, long pushed) {
    if (v == t) return pushed;
    auto& arcs = adj_[static_cast<std::size_t>(v)];
    for (int& i = iter_[static_cast<std::size_t>(v)]; i < static_cast<int>(arcs.size()); ++i) {
      Arc& a = arcs[static_cast<std::size_t>(i)];
      if (a.cap <= 0 || level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(v)] + 1) continue;
      const long got = dfs(a.to, t, std::min(pushed, a.cap));
      if (got > 0) {
        a.cap -= got;
        adj_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace kstar::detail
