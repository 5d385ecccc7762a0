#include <bitset>
#include <stdexcept>
#include <string>
#include <vector>

#include "kstar/decompose.hpp"

namespace kstar {

namespace {

using Bits = std::bitset<kMaxIndependenceCap>;

class MaxIndependentSet {
 public:
  explicit MaxIndependentSet(const Multigraph& g) : nbr_(static_cast<std::size_t>(g.vertex_count())) {
    for (std::size_t v = 0; v < nbr_.size(); ++v) all_.set(v);
    for (const auto& e : g.edges()) {
      if (e.is_loop()) {
        all_.reset(static_cast<std::size_t>(e.u));  // adjacent to itself
        continue;
      }
      nbr_[static_cast<std::size_t>(e.u)].set(static_cast<std::size_t>(e.v));
      nbr_[static_cast<std::size_t>(e.v)].set(static_cast<std::size_t>(e.u));
    }
  }

  // Largest independent set size, stopping early once `enough` is reached.
  int solve(int enough) {
    enough_ = enough;
    best_ = greedy(all_);
    if (best_ < enough_) search(all_, 0);
    return best_;
  }

 private:
  int greedy(Bits p) const {
    int count = 0;
    while (p.any()) {
      std::size_t pick = p._Find_first(), pick_deg = nbr_.size() + 1;
      for (std::size_t v = p._Find_first(); v < p.size(); v = p._Find_next(v)) {
        const std::size_t dv = (nbr_[v] & p).count();
        if (dv < pick_deg) {
          pick = v;
          pick_deg = dv;
        }
      }
      p &= ~nbr_[pick];
      p.reset(pick);
      ++count;
    }
    return count;
  }

  // Number of cliques in a greedy clique cover of p.
  int clique_cover(Bits p) const {
    int cliques = 0;
    while (p.any()) {
      const std::size_t v = p._Find_first();
      Bits cand = p & nbr_[v];
      p.reset(v);
      while (cand.any()) {
        const std::size_t u = cand._Find_first();
        p.reset(u);
        cand &= nbr_[u];
      }
      ++cliques;
    }
    return cliques;
  }

  void search(Bits p, int count) {
    if (best_ >= enough_) return;
    // Vertices of degree <= 1 in p are always safe to take.
    bool reduced = true;
    while (reduced) {
      reduced = false;
      for (std::size_t v = p._Find_first(); v < p.size(); v = p._Find_next(v)) {
        if ((nbr_[v] & p).count() <= 1) {
          p &= ~nbr_[v];
          p.reset(v);
          ++count;
          reduced = true;
        }
      }
    }
    if (p.none()) {
      best_ = std::max(best_, count);
      return;
    }
    if (count + clique_cover(p) <= best_) return;
    std::size_t branch = p._Find_first(), branch_deg = 0;
    for (std::size_t v = p._Find_first(); v < p.size(); v = p._Find_next(v)) {
      const std::size_t dv = (nbr_[v] & p).count();
      if (dv > branch_deg) {
        branch = v;
        branch_deg = dv;
      }
    }
    Bits with = p & ~nbr_[branch];
    with.reset(branch);
    search(with, count + 1);
    Bits without = p;
    without.reset(branch);
    search(without, count);
  }

  std::vector<Bits> nbr_;
  Bits all_;
  int best_ = 0;
  int enough_ = 0;
};

void check_cap(const Multigraph& g, int cap) {
  if (cap < 1 || cap > kMaxIndependenceCap)
    throw std::invalid_argument("independence cap must be in 1.." + std::to_string(kMaxIndependenceCap));
  if (g.vertex_count() > cap)
    throw std::domain_error("independence_number: |V|=" + std::to_string(g.vertex_count()) + " exceeds cap " +
                            std::to_string(cap));
}

}  // namespace

int independence_number(const Multigraph& g, int cap) {
  check_cap(g, cap);
  return MaxIndependentSet(g).solve(g.vertex_count() + 1);
}

bool has_independent_set(const Multigraph& g, int size, int cap) {
  check_cap(g, cap);
  if (size <= 0) return true;
  return MaxIndependentSet(g).solve(size) >= size;
}

}  // namespace kstar
