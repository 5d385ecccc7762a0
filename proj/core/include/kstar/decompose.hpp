// k-star decompositions of concrete graphs.
//
// A k-star decomposition is the same as an orientation in which every
// in-degree is a multiple of k: each vertex is the centre of indeg/k stars
// made of its in-edges. The exact solver branches on per-vertex in-degree
// targets and uses an orientation flow with interval bounds as relaxation.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kstar/graph.hpp"

namespace kstar {

struct Orientation {
  std::vector<int> head;      // head[e]: endpoint edge e points into
  std::vector<int> indegree;  // per vertex
};

struct Star {
  int center = 0;
  std::vector<int> edges;  // edge ids
};

struct StarDecomposition {
  int k = 0;
  std::vector<Star> stars;
};

bool verify(const Multigraph& g, const StarDecomposition& s, int k);
// Empty string when valid, otherwise the first violation found.
std::string explain_invalid(const Multigraph& g, const StarDecomposition& s, int k);

// Orientation with indegree(v) == targets[v] for all v, or nullopt.
// Throws std::invalid_argument when the targets do not sum to |E|.
std::optional<Orientation> orientation_feasible(const Multigraph& g, const std::vector<int>& targets);
// Same with lo[v] <= indegree(v) <= hi[v].
std::optional<Orientation> orientation_in_bounds(const Multigraph& g, const std::vector<int>& lo,
                                                 const std::vector<int>& hi);

// Groups each vertex's in-edges into stars of size k, in edge-id order.
// Throws std::invalid_argument unless every in-degree is a multiple of k.
StarDecomposition orientation_to_stars(const Multigraph& g, const Orientation& o, int k);

// Connected graph, every degree even and k | deg/2: Euler-circuit orientation.
StarDecomposition eulerian_stars(const Multigraph& g, int k);

// Connected graph with an even number of edges.
StarDecomposition two_star_decompose(const Multigraph& g);

inline constexpr int kDefaultIndependenceCap = 60;
inline constexpr int kMaxIndependenceCap = 128;

// Exact; throws std::domain_error when |V| exceeds cap.
int independence_number(const Multigraph& g, int cap = kDefaultIndependenceCap);
// Exact decision version with early exit.
bool has_independent_set(const Multigraph& g, int size, int cap = kDefaultIndependenceCap);

enum class SolveMode { exact, heuristic, automatic };
enum class SolveStatus { found, proven_none, unknown };

std::string to_string(SolveMode m);
std::string to_string(SolveStatus s);
SolveMode parse_solve_mode(const std::string& s);

struct SolveOptions {
  SolveMode mode = SolveMode::automatic;
  double time_limit_seconds = 60;
  std::uint64_t seed = 0;
  long node_cap = 5'000'000;
  int heuristic_restarts = 200;
};

struct SolveStats {
  long nodes = 0;
  std::string method;  // per component, comma separated
};

struct SolveResult {
  SolveStatus status = SolveStatus::unknown;
  std::optional<StarDecomposition> decomposition;
  std::string reason;
  SolveStats stats;
};

// Simple graphs only (std::invalid_argument otherwise).
SolveResult solve(const Multigraph& g, int k, const SolveOptions& options = {});

}  // namespace kstar
