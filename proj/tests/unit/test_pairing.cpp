#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "kstar/graph.hpp"
#include "kstar/pairing.hpp"
#include "oracles.hpp"

using namespace kstar;

TEST(MPairings, KnownValues) {
  EXPECT_EQ(m_pairings(0), 1);
  EXPECT_EQ(m_pairings(2), 3);
  EXPECT_EQ(m_pairings(6), 10395);
}

TEST(MPairings, CanonicalEnumerationCountsAndIsDuplicateFree) {
  for (int points = 0; points <= 12; points += 2) {
    std::set<std::vector<int>> seen;
    long count = 0;
    oracle::for_each_pairing(points, [&](const std::vector<int>& partner) {
      ++count;
      seen.insert(partner);
    });
    EXPECT_EQ(BigInt(count), m_pairings(points / 2));
    EXPECT_EQ(static_cast<long>(seen.size()), count);
  }
}

TEST(SamplePairing, UniquePairingForTwoPoints) {
  const Pairing p = sample_pairing(2, 1, 123);
  EXPECT_TRUE(p.valid());
  EXPECT_EQ(p.partner, (std::vector<int>{1, 0}));
}

TEST(SamplePairing, ChiSquareUniformOverThreePairings) {
  std::map<std::vector<int>, int> counts;
  const int samples = 30000;
  for (int i = 0; i < samples; ++i) ++counts[sample_pairing(1, 4, derive_seed({77, static_cast<std::uint64_t>(i)})).partner];
  ASSERT_EQ(counts.size(), 3u);
  double chi2 = 0;
  for (const auto& [k, c] : counts) chi2 += (c - samples / 3.0) * (c - samples / 3.0) / (samples / 3.0);
  // 2 degrees of freedom: p > 0.001 iff chi2 < 13.816.
  EXPECT_LT(chi2, 13.816);
}

TEST(SamplePairing, ProjectionIsRegular) {
  Rng rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    int n = gen::uniform_int(rng, 1, 40);
    const int d = gen::uniform_int(rng, 1, 6);
    if ((n * d) % 2) ++n;
    const Pairing p = sample_pairing(n, d, rng.next());
    ASSERT_TRUE(p.valid());
    const Multigraph g = project(p);
    EXPECT_TRUE(g.is_regular(d));
    EXPECT_EQ(g.edge_count(), n * d / 2);
  }
}

TEST(SamplePairing, DeterministicGivenSeed) {
  EXPECT_EQ(sample_pairing(50, 3, 9).partner, sample_pairing(50, 3, 9).partner);
  EXPECT_NE(sample_pairing(50, 3, 9).partner, sample_pairing(50, 3, 10).partner);
}

TEST(CountCycles, HandGraphs) {
  const auto tri = count_cycles(cycle_graph(3), 4);
  EXPECT_EQ(tri, (std::vector<long>{0, 0, 1, 0}));
  Multigraph g(4);
  g.add_edge(0, 0);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 1);
  EXPECT_EQ(count_cycles(g, 3), (std::vector<long>{1, 0, 1}));
  EXPECT_EQ(count_cycles(complete_graph(4), 4), (std::vector<long>{0, 0, 4, 3}));
  // Two parallel edges plus a third: three 2-cycles, and triangles through each copy.
  Multigraph h(3);
  h.add_edge(0, 1);
  h.add_edge(0, 1);
  h.add_edge(0, 1);
  h.add_edge(1, 2);
  h.add_edge(2, 0);
  EXPECT_EQ(count_cycles(h, 3), (std::vector<long>{0, 3, 3}));
  EXPECT_EQ(count_cycles(petersen_graph(), 5)[4], 12);
}

TEST(IsSimple, Cases) {
  EXPECT_TRUE(is_simple(complete_graph(4)));
  Multigraph g(2);
  g.add_edge(0, 0);
  EXPECT_FALSE(is_simple(g));
  Multigraph h(2);
  h.add_edge(0, 1);
  h.add_edge(1, 0);
  EXPECT_FALSE(is_simple(h));
}

TEST(SampleSimple, AlwaysSimpleRegularAndDeterministic) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = gen::uniform_int(rng, 2, 5);
    int n = gen::uniform_int(rng, d + 1, 30);
    if ((n * d) % 2) ++n;
    const auto seed = rng.next();
    const auto s = sample_simple_graph(n, d, seed);
    EXPECT_TRUE(is_simple(s.graph));
    EXPECT_TRUE(s.graph.is_regular(d));
    EXPECT_GE(s.tries, 1);
    const auto again = sample_simple_graph(n, d, seed);
    EXPECT_EQ(again.tries, s.tries);
    for (int e = 0; e < s.graph.edge_count(); ++e) {
      EXPECT_EQ(again.graph.edge(e).u, s.graph.edge(e).u);
      EXPECT_EQ(again.graph.edge(e).v, s.graph.edge(e).v);
    }
  }
}

TEST(SampleSimple, ExpectedTriesNearESquared) {
  double total = 0;
  const int runs = 400;
  for (int i = 0; i < runs; ++i) total += sample_simple_graph(100, 3, derive_seed({55, static_cast<std::uint64_t>(i)})).tries;
  const double mean = total / runs;
  // Geometric with success probability near e^-2: sd of a single try count about 6.9.
  EXPECT_NEAR(mean, std::exp(2.0), 3 * 6.9 / std::sqrt(double(runs)) + 0.5);
}

TEST(SampleSimple, ThrowsWhenExhausted) { EXPECT_THROW(sample_simple_graph(2, 3, 1, 5), std::exception); }

TEST(Poisson, SmallCycleMeans) {
  const int samples = 10000;
  std::vector<double> sum(3, 0), sq(3, 0);
  for (int i = 0; i < samples; ++i) {
    const auto x = count_cycles(project(sample_pairing(200, 3, derive_seed({2024, static_cast<std::uint64_t>(i)}))), 3);
    for (int j = 0; j < 3; ++j) {
      sum[j] += x[j];
      sq[j] += double(x[j]) * x[j];
    }
  }
  const double lambda[3] = {1.0, 1.0, 4.0 / 3.0};
  for (int j = 0; j < 3; ++j) {
    const double mean = sum[j] / samples;
    const double var = (sq[j] - samples * mean * mean) / (samples - 1);
    EXPECT_NEAR(mean, lambda[j], 3 * std::sqrt(var / samples)) << "j=" << j + 1;
  }
}

TEST(Poisson, SimplicityProbability) {
  const int samples = 10000;
  int simple = 0;
  for (int i = 0; i < samples; ++i)
    simple += is_simple(project(sample_pairing(500, 3, derive_seed({4048, static_cast<std::uint64_t>(i)}))));
  const double p = double(simple) / samples;
  EXPECT_NEAR(p, std::exp(-2.0), 3 * std::sqrt(p * (1 - p) / samples));
}

TEST(GraphIo, RoundTripAndErrors) {
  Rng rng(3);
  const Multigraph g = project(sample_pairing(10, 3, 4));
  std::stringstream ss;
  write_graph(ss, g);
  const Multigraph h = read_graph(ss);
  ASSERT_EQ(h.edge_count(), g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    EXPECT_EQ(h.edge(e).u, g.edge(e).u);
    EXPECT_EQ(h.edge(e).v, g.edge(e).v);
  }
  std::stringstream bad("3 2\n0 1\n1 7\n");
  EXPECT_THROW(read_graph(bad), std::runtime_error);
  std::stringstream short_file("3 2\n0 1\n");
  EXPECT_THROW(read_graph(short_file), std::runtime_error);
}

TEST(Graph, DegreesCountLoopsTwice) {
  Multigraph g(2);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  EXPECT_EQ(g.degree(0), 3);
  EXPECT_EQ(g.loop_count(), 1);
  EXPECT_EQ(petersen_graph().edge_count(), 15);
  EXPECT_TRUE(petersen_graph().is_regular(3));
  EXPECT_TRUE(complete_bipartite(3, 3).is_regular(3));
}
