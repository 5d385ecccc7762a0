#include "kstar/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kstar {

Multigraph::Multigraph(int n) {
  if (n < 0) throw std::invalid_argument("Multigraph: negative vertex count");
  adj_.resize(static_cast<std::size_t>(n));
  degree_.assign(static_cast<std::size_t>(n), 0);
}

int Multigraph::add_edge(int u, int v) {
  const int n = vertex_count();
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw std::out_of_range("edge (" + std::to_string(u) + "," + std::to_string(v) + ") outside 0.." +
                            std::to_string(n - 1));
  const int id = edge_count();
  edges_.push_back({u, v});
  adj_[static_cast<std::size_t>(u)].push_back({v, id});
  if (u != v) adj_[static_cast<std::size_t>(v)].push_back({u, id});
  degree_[static_cast<std::size_t>(u)] += 1;
  degree_[static_cast<std::size_t>(v)] += 1;
  return id;
}

int Multigraph::loop_count() const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); }));
}

long Multigraph::parallel_pair_count() const {
  std::map<std::pair<int, int>, long> mult;
  for (const auto& e : edges_) {
    if (!e.is_loop()) ++mult[{std::min(e.u, e.v), std::max(e.u, e.v)}];
  }
  long total = 0;
  for (const auto& [key, m] : mult) total += m * (m - 1) / 2;
  return total;
}

bool Multigraph::is_regular(int d) const {
  return std::all_of(degree_.begin(), degree_.end(), [d](int x) { return x == d; });
}

std::pair<std::vector<int>, int> Multigraph::components() const {
  std::vector<int> comp(adj_.size(), -1);
  int count = 0;
  std::vector<int> stack;
  for (int s = 0; s < vertex_count(); ++s) {
    if (comp[static_cast<std::size_t>(s)] != -1) continue;
    comp[static_cast<std::size_t>(s)] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& inc : incident(v)) {
        if (comp[static_cast<std::size_t>(inc.neighbor)] == -1) {
          comp[static_cast<std::size_t>(inc.neighbor)] = count;
          stack.push_back(inc.neighbor);
        }
      }
    }
    ++count;
  }
  return {std::move(comp), count};
}

bool Multigraph::connected() const { return components().second <= 1; }

bool is_simple(const Multigraph& g) { return g.loop_count() == 0 && g.parallel_pair_count() == 0; }

Multigraph read_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (out.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("graph file line " + std::to_string(line_no) + ": " + what);
  };
  if (!next_line(line)) fail("missing header 'n m'");
  long n = -1, m = -1;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0) fail("expected header 'n m'");
  }
  Multigraph g(static_cast<int>(n));
  for (long i = 0; i < m; ++i) {
    if (!next_line(line)) fail("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    std::istringstream es(line);
    long u = -1, v = -1;
    std::string extra;
    if (!(es >> u >> v) || (es >> extra)) fail("expected 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n) fail("vertex id out of range");
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  if (next_line(line)) fail("unexpected content after " + std::to_string(m) + " edges");
  return g;
}

Multigraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Multigraph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Multigraph complete_graph(int n) {
  Multigraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Multigraph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph needs n >= 3");
  Multigraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Multigraph complete_bipartite(int a, int b) {
  Multigraph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g;
}

Multigraph petersen_graph() {
  Multigraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

}  // namespace kstar
