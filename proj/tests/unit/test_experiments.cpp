#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "kstar/experiments.hpp"
#include "kstar/pairing.hpp"
#include "kstar/random.hpp"

using namespace kstar;

namespace {

TrialConfig config(int d, int k, std::vector<long> ns, int trials, std::uint64_t seed) {
  TrialConfig c;
  c.d = d;
  c.k = k;
  c.n_list = std::move(ns);
  c.trials = trials;
  c.master_seed = seed;
  c.solver.time_limit_seconds = 10;
  return c;
}

std::string existence_csv(const ExistenceResult& r) {
  std::ostringstream out;
  write_existence_csv(out, r.records);
  return out.str();
}

}  // namespace

TEST(Wilson, BoundaryAndKnownValue) {
  const auto all = wilson_interval(50, 50);
  EXPECT_EQ(all.hi, 1.0);
  EXPECT_GT(all.lo, 0.9);
  const auto none = wilson_interval(0, 50);
  EXPECT_EQ(none.lo, 0.0);
  const auto half = wilson_interval(50, 100);
  EXPECT_NEAR(half.lo, 0.4038, 1e-4);
  EXPECT_NEAR(half.hi, 0.5962, 1e-4);
  EXPECT_THROW(wilson_interval(5, 4), std::invalid_argument);
}

TEST(Existence, ValidatesDivisibility) {
  EXPECT_THROW(run_existence(config(4, 3, {7}, 3, 1)), std::domain_error);
  EXPECT_THROW(run_existence(config(4, 3, {}, 3, 1)), std::invalid_argument);
}

TEST(Existence, EulerianCaseAlwaysSucceeds) {
  const auto r = run_existence(config(4, 2, {10, 20}, 50, 11));
  ASSERT_EQ(r.summary.size(), 2u);
  for (const auto& f : r.summary) {
    EXPECT_EQ(f.trials, 50);
    EXPECT_EQ(f.frequency, 1.0);
  }
}

TEST(Existence, RecordsOrderedAndSummaryRecomputes) {
  auto c = config(4, 3, {6, 12, 18}, 12, 5);
  c.threads = 3;
  const auto r = run_existence(c);
  ASSERT_EQ(r.records.size(), 36u);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    EXPECT_EQ(r.records[i].n, c.n_list[i / 12]);
    EXPECT_EQ(r.records[i].trial, static_cast<int>(i % 12));
    EXPECT_TRUE(r.records[i].simple);
    EXPECT_NE(r.records[i].status, "");
  }
  const auto again = summarize(r.records);
  ASSERT_EQ(again.size(), r.summary.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    EXPECT_EQ(again[i].successes, r.summary[i].successes);
    EXPECT_EQ(again[i].interval.lo, r.summary[i].interval.lo);
  }
}

TEST(Existence, ByteIdenticalAcrossRunsAndThreadCounts) {
  auto a = config(5, 4, {8, 16}, 10, 99);
  a.threads = 1;
  auto b = a;
  b.threads = 4;
  const std::string first = existence_csv(run_existence(a));
  EXPECT_EQ(first, existence_csv(run_existence(a)));
  EXPECT_EQ(first, existence_csv(run_existence(b)));
  auto other = a;
  other.master_seed = 100;
  EXPECT_NE(first, existence_csv(run_existence(other)));
}

TEST(Existence, TrialRegeneratesFromItsSeed) {
  const auto r = run_existence(config(4, 3, {12}, 5, 21));
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.seed, derive_seed({21, 12, static_cast<std::uint64_t>(rec.trial)}));
    const auto g = sample_simple_graph(12, 4, rec.seed).graph;
    const auto x = count_cycles(g, 4);
    EXPECT_EQ(x[2], rec.x[2]);
    EXPECT_EQ(x[3], rec.x[3]);
  }
}

TEST(Existence, CsvHeader) {
  const auto r = run_existence(config(4, 3, {6}, 2, 1));
  const std::string csv = existence_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,trial,seed,simple,x1,x2,x3,x4,found,status,ms");
}

TEST(Existence, MultigraphsMarkedNotSimple) {
  auto c = config(3, 2, {4}, 60, 3);
  c.simple_only = false;
  const auto r = run_existence(c);
  int not_simple = 0;
  for (const auto& rec : r.records) {
    if (!rec.simple) {
      ++not_simple;
      EXPECT_EQ(rec.status, "not-simple");
      EXPECT_FALSE(rec.found);
    }
  }
  EXPECT_GT(not_simple, 0);
}

TEST(Cycles, PoissonMeansAndSimplicity) {
  const auto r = run_cycle_poisson(3, 200, 10000, 3, 17);
  const double lambda[3] = {1.0, 1.0, 4.0 / 3.0};
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(r.stats[j].mean, lambda[j], 3 * r.stats[j].std_error);
    EXPECT_DOUBLE_EQ(r.stats[j].lambda, lambda[j]);
  }
  const double ratio = r.stats[0].variance / r.stats[0].mean;
  EXPECT_GT(ratio, 0.9);
  EXPECT_LT(ratio, 1.1);
  EXPECT_NEAR(r.simple_frequency, std::exp(-2.0), 3 * r.simple_std_error);
}

TEST(Cycles, DegreeTwo) {
  const auto r = run_cycle_poisson(2, 300, 4000, 2, 8);
  EXPECT_NEAR(r.stats[0].mean, 0.5, 3 * r.stats[0].std_error);
  EXPECT_DOUBLE_EQ(r.stats[1].lambda, 0.25);
}

TEST(Cycles, RejectsFewTrials) { EXPECT_THROW(run_cycle_poisson(3, 20, 99, 3, 1), std::invalid_argument); }

TEST(Leaf, ImplicationAndContainment) {
  SolveOptions s;
  s.time_limit_seconds = 10;
  const auto r = run_leaf_condition(4, 3, 24, 40, 6, s);
  EXPECT_TRUE(r.implication_holds);
  EXPECT_GE(r.condition.successes, r.decomposition.successes);
  EXPECT_EQ(r.required, 8);
  for (const auto& rec : r.records)
    if (rec.found) EXPECT_TRUE(rec.condition);
}

TEST(Leaf, RequiredSizeAtFiveFour) {
  SolveOptions s;
  const auto r = run_leaf_condition(5, 4, 40, 3, 2, s);
  EXPECT_EQ(r.required, 15);
  EXPECT_TRUE(r.implication_holds);
}

TEST(Leaf, CapAndRangeErrors) {
  EXPECT_THROW(run_leaf_condition(4, 3, 66, 2, 1, {}, 1, 60), std::domain_error);
  EXPECT_THROW(run_leaf_condition(4, 2, 12, 2, 1, {}), std::invalid_argument);
}

TEST(Json, SummaryFields) {
  const auto c = config(4, 3, {6}, 4, 2);
  const auto j = summary_json(run_existence(c), c);
  EXPECT_EQ(j["experiment"], "existence");
  ASSERT_EQ(j["per_n"].size(), 1u);
  EXPECT_EQ(j["per_n"][0]["trials"], 4);
  EXPECT_TRUE(j["per_n"][0]["wilson95"].is_array());
}
