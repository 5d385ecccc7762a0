#include <gtest/gtest.h>

#include <atomic>
#include <set>
#include <stdexcept>

#include "generators.hpp"
#include "kstar/numeric.hpp"
#include "kstar/parallel.hpp"
#include "kstar/random.hpp"

using namespace kstar;

TEST(Numeric, BinomialSmallValues) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(20, 12), 125970);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(5, 6), 0);
}

TEST(Numeric, BinomialPascalProperty) {
  for (long n = 1; n <= 60; ++n)
    for (long k = 1; k < n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST(Numeric, FactorialAndFalling) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(12), 479001600);
  EXPECT_EQ(falling_factorial(10, 3), 720);
  EXPECT_EQ(falling_factorial(10, 0), 1);
  const FactorialTable t(30);
  for (long i = 0; i <= 30; ++i) EXPECT_EQ(t(i), factorial(i));
}

TEST(Numeric, PowAndRationalPow) {
  EXPECT_EQ(pow(BigInt(2), 100), BigInt("1267650600228229401496703205376"));
  EXPECT_EQ(pow(rat(2, 3), 3), rat(8, 27));
}

TEST(Numeric, DecimalHasWorkingPrecision) {
  const Decimal third = to_decimal(rat(1, 3));
  const Decimal err = third * 3 - 1;
  EXPECT_LT(abs(err), Decimal("1e-55"));
  EXPECT_EQ(format_decimal(to_decimal(rat(1, 8)), 17), "0.125");
  EXPECT_EQ(format_fixed(to_decimal(rat(2, 3)), 3), "0.667");
}

TEST(Random, DeriveSeedIsOrderSensitiveAndDeterministic) {
  EXPECT_EQ(derive_seed({1, 2, 3}), derive_seed({1, 2, 3}));
  EXPECT_NE(derive_seed({1, 2, 3}), derive_seed({3, 2, 1}));
  EXPECT_NE(derive_seed({1, 2}), derive_seed({1, 2, 0}));
}

TEST(Random, BelowStaysInRangeAndCoversIt) {
  Rng rng(42);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto x = rng.below(7);
    ASSERT_LT(x, 7u);
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Random, ShuffleIsAPermutation) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> v(static_cast<std::size_t>(gen::uniform_int(rng, 0, 40)));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
    auto w = v;
    rng.shuffle(w.begin(), w.end());
    std::sort(w.begin(), w.end());
    EXPECT_EQ(v, w);
  }
}

TEST(Parallel, VisitsEverySlotOnce) {
  for (unsigned threads : {1u, 2u, 4u}) {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(Parallel, RethrowsWorkerException) {
  EXPECT_THROW(parallel_for(100, 3,
                            [](std::size_t i) {
                              if (i == 37) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}
