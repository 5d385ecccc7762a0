#include <gtest/gtest.h>
#include <mpfr.h>

#include <algorithm>
#include <set>

#include "generators.hpp"
#include "kstar/polyexact.hpp"
#include "kstar/thresholds.hpp"

using namespace kstar;

namespace {

RationalPolynomial poly(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long x : coeffs) c.emplace_back(x);
  return RationalPolynomial(std::move(c));
}

}  // namespace

TEST(Polynomial, ArithmeticAndDerivative) {
  const auto p = poly({-1, 0, 1});  // x^2 - 1
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(Rational(3)), 8);
  EXPECT_EQ(p.derivative(), poly({0, 2}));
  const auto [q, r] = p.divmod(poly({-1, 1}));
  EXPECT_EQ(q, poly({1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ((p - p).degree(), -1);
}

TEST(Polynomial, GcdAndSquareFree) {
  const auto a = poly({-1, 1}) * poly({-1, 1}) * poly({2, 1});  // (x-1)^2 (x+2)
  EXPECT_EQ(square_free_part(a), poly({-2, 1, 1}));
  EXPECT_EQ(gcd(a, a.derivative()), poly({-1, 1}));
}

TEST(Polynomial, StripXPower) {
  const auto p = poly({0, 0, 3, 1});
  const auto [power, rest] = p.strip_x_power();
  EXPECT_EQ(power, 2u);
  EXPECT_EQ(rest, poly({3, 1}));
}

TEST(RootCount, KnownExamples) {
  EXPECT_EQ(root_count_in_interval(poly({-1, 0, 1}), RationalInterval::open(0, 2)), 1);
  EXPECT_EQ(root_count_in_interval(poly({1, 0, 1}), RationalInterval::open(-10, 10)), 0);
}

TEST(RootCount, StationaryPolynomialAt20_12HasOneSurvivingRoot) {
  const Params p{20, 12};
  const P1Detail detail = check_P1_detail(p);
  EXPECT_EQ(detail.surviving_roots, 1);
  EXPECT_TRUE(detail.holds);
  EXPECT_GE(root_count_in_interval(build_stationary_polynomial(p), p1_interval(p)), 1);
}

TEST(RootCount, OpenAndClosedEndpoints) {
  const auto p = poly({0, -1, 1});  // roots 0 and 1
  EXPECT_EQ(root_count_in_interval(p, RationalInterval::open(0, 1)), 0);
  EXPECT_EQ(root_count_in_interval(p, RationalInterval::closed(0, 1)), 2);
}

TEST(RefineRoot, KnownExamples) {
  const auto r2 = refine_root(poly({-2, 0, 1}), RationalInterval::open(1, 2), rat(1, 1000));
  EXPECT_LE(r2.width(), rat(1, 1000));
  EXPECT_LT(r2.lo * r2.lo, 2);
  EXPECT_GT(r2.hi * r2.hi, 2);
  const auto r1 = refine_root(poly({-1, 1}), RationalInterval::open(0, 2), rat(1, 10));
  EXPECT_TRUE(r1.contains(Rational(1)));
  EXPECT_LE(r1.width(), rat(1, 10));
}

TEST(RefineRoot, StationaryPolynomialAt3_2AroundOne) {
  const auto q = build_stationary_polynomial({3, 2});
  EXPECT_EQ(q(Rational(1)), 0);
  const auto r = refine_root(q, RationalInterval::open(rat(9, 10), rat(11, 10)), rat(1, 1000000));
  EXPECT_TRUE(r.contains(Rational(1)));
}

// Planted rational roots: Sturm counts match the number of distinct planted
// roots inside random intervals.
TEST(RootCountProperty, PlantedRoots) {
  Rng rng(20240601);
  for (int trial = 0; trial < 300; ++trial) {
    const auto planted = gen::planted_polynomial(rng, 8, trial % 3 == 0);
    Rational a = gen::small_rational(rng, 25, 5), b = gen::small_rational(rng, 25, 5);
    if (a == b) b += 1;
    if (b < a) std::swap(a, b);
    const bool closed = trial % 2 == 0;
    const auto iv = closed ? RationalInterval::closed(a, b) : RationalInterval::open(a, b);
    std::set<Rational> inside;
    for (const auto& r : planted.roots)
      if (iv.contains(r)) inside.insert(r);
    ASSERT_EQ(root_count_in_interval(planted.poly, iv), static_cast<int>(inside.size()))
        << planted.poly.to_string() << " on " << iv.to_string();
  }
}

// Every refined interval still holds exactly one distinct root and is narrow.
TEST(RefineRootProperty, IsolatesAndNarrows) {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto planted = gen::planted_polynomial(rng, 6, trial % 2 == 0);
    const SturmChain chain(planted.poly);
    const auto isolated = chain.isolate(RationalInterval::open(-100, 100));
    std::set<Rational> distinct(planted.roots.begin(), planted.roots.end());
    ASSERT_EQ(isolated.size(), distinct.size());
    for (const auto& iv : isolated) {
      const auto fine = refine_root(planted.poly, iv, rat(1, 1 << 20));
      EXPECT_LE(fine.width(), rat(1, 1 << 20));
      const int hits = static_cast<int>(std::count_if(distinct.begin(), distinct.end(),
                                                      [&](const Rational& r) { return fine.contains(r); }));
      EXPECT_EQ(hits, 1);
      // A sign change across the square-free part certifies the root.
      const auto sf = square_free_part(planted.poly);
      if (!fine.contains(fine.lo) && !fine.contains(fine.hi) && sf(fine.lo) != 0 && sf(fine.hi) != 0)
        EXPECT_LT(sign(sf(fine.lo)) * sign(sf(fine.hi)), 0);
    }
  }
}

TEST(PowerProduct, KnownExamples) {
  PowerProduct lhs, rhs;
  lhs.times(2, 10);
  rhs.times(10, 3);
  EXPECT_EQ(power_product_compare(lhs, rhs), std::strong_ordering::greater);
  EXPECT_TRUE(kplus_inequality({20, 12}));
  EXPECT_FALSE(kplus_inequality({20, 13}));
}

TEST(PowerProduct, EqualityAndNegativeExponents) {
  PowerProduct a, b;
  a.times(4, 3);
  b.times(2, 6);
  EXPECT_EQ(power_product_compare(a, b), std::strong_ordering::equal);
  PowerProduct c, e;
  c.times(3, -2);
  e.times(1, 5);
  EXPECT_EQ(power_product_compare(c, e), std::strong_ordering::less);
  EXPECT_EQ(c.value(), rat(1, 9));
}

namespace {

// log of a power product at 5000 bits.
void mpfr_log_product(mpfr_t out, const PowerProduct& p) {
  mpfr_t term;
  mpfr_init2(term, 5000);
  mpfr_set_ui(out, 0, MPFR_RNDN);
  for (const auto& f : p.factors) {
    mpfr_set_z(term, f.base.get_mpz_t(), MPFR_RNDN);
    mpfr_log(term, term, MPFR_RNDN);
    mpfr_mul_si(term, term, f.exponent, MPFR_RNDN);
    mpfr_add(out, out, term, MPFR_RNDN);
  }
  mpfr_clear(term);
}

}  // namespace

// Exact comparison agrees with 5000-bit evaluation wherever the float margin is
// far above its rounding error.
TEST(PowerProductProperty, AgreesWithHighPrecisionFloat) {
  Rng rng(5000);
  mpfr_t l, r, diff;
  mpfr_inits2(5000, l, r, diff, static_cast<mpfr_ptr>(nullptr));
  int decided = 0;
  for (int trial = 0; trial < 500; ++trial) {
    PowerProduct a, b;
    const int fa = gen::uniform_int(rng, 1, 5), fb = gen::uniform_int(rng, 1, 5);
    for (int i = 0; i < fa; ++i) a.times(gen::uniform_int(rng, 1, 60), gen::uniform_int(rng, -400, 400));
    for (int i = 0; i < fb; ++i) b.times(gen::uniform_int(rng, 1, 60), gen::uniform_int(rng, -400, 400));
    if (trial % 10 == 0) b = a;  // exercise equality
    mpfr_log_product(l, a);
    mpfr_log_product(r, b);
    mpfr_sub(diff, l, r, MPFR_RNDN);
    const auto exact = power_product_compare(a, b);
    if (mpfr_zero_p(diff)) {
      EXPECT_EQ(exact, std::strong_ordering::equal);
      continue;
    }
    // Each log term carries relative error near 2^-5000 on magnitudes below 2^12.
    if (mpfr_get_exp(diff) < -4900) continue;
    ++decided;
    EXPECT_EQ(exact, mpfr_sgn(diff) > 0 ? std::strong_ordering::greater : std::strong_ordering::less);
  }
  mpfr_clears(l, r, diff, static_cast<mpfr_ptr>(nullptr));
  EXPECT_GT(decided, 400);
}
