// Undirected multigraph with stable edge ids (input order), plus the plain
// text edge-list format: first line "n m", then m lines "u v", 0-based.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace kstar {

struct Edge {
  int u = 0;
  int v = 0;
  bool is_loop() const { return u == v; }
  int other(int x) const { return x == u ? v : u; }
};

class Multigraph {
 public:
  struct Incidence {
    int neighbor;
    int edge;
  };

  Multigraph() = default;
  explicit Multigraph(int n);

  int add_edge(int u, int v);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  // A loop appears once in its vertex's list and contributes 2 to the degree.
  const std::vector<Incidence>& incident(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }

  int loop_count() const;
  // Sum over vertex pairs of binom(multiplicity, 2).
  long parallel_pair_count() const;
  bool is_regular(int d) const;

  // Component id per vertex, ids 0..count-1 in order of first vertex.
  std::pair<std::vector<int>, int> components() const;
  bool connected() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adj_;
  std::vector<int> degree_;
};

bool is_simple(const Multigraph& g);

// Throws std::runtime_error with a line number on malformed input.
Multigraph read_graph(std::istream& in);
Multigraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Multigraph& g);

Multigraph complete_graph(int n);
Multigraph cycle_graph(int n);
Multigraph complete_bipartite(int a, int b);
Multigraph petersen_graph();

}  // namespace kstar
