// Exact univariate polynomial arithmetic over Q, Sturm-chain real root
// counting/isolation, and exact comparison of integer power products.
//
// Nothing in this header touches floating point except RationalPolynomial::
// evaluate(Decimal), which is used for reporting only.

#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kstar/numeric.hpp"

namespace kstar {

class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  // coeffs[i] multiplies x^i. Trailing zeros are dropped.
  explicit RationalPolynomial(std::vector<Rational> coeffs);

  static RationalPolynomial constant(const Rational& c);
  static RationalPolynomial monomial(const Rational& c, std::size_t power);
  static RationalPolynomial x() { return monomial(Rational(1), 1); }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t power) const;
  const Rational& leading() const;

  Rational operator()(const Rational& x) const;
  Decimal evaluate(const Decimal& x) const;

  RationalPolynomial derivative() const;
  // Largest m with x^m | p, and p / x^m.
  std::pair<std::size_t, RationalPolynomial> strip_x_power() const;

  RationalPolynomial& operator+=(const RationalPolynomial& rhs);
  RationalPolynomial& operator-=(const RationalPolynomial& rhs);
  RationalPolynomial& operator*=(const RationalPolynomial& rhs);
  RationalPolynomial& operator*=(const Rational& c);

  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const RationalPolynomial& b) { return a *= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const Rational& c) { return a *= c; }
  friend RationalPolynomial operator*(const Rational& c, RationalPolynomial a) { return a *= c; }
  friend RationalPolynomial operator-(RationalPolynomial a) { return a *= Rational(-1); }
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) = default;

  // Euclidean division; throws on a zero divisor.
  std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& divisor) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b);  // monic
RationalPolynomial square_free_part(const RationalPolynomial& p);                 // monic

struct RationalInterval {
  Rational lo;
  Rational hi;
  bool lo_open = true;
  bool hi_open = true;

  static RationalInterval open(Rational lo, Rational hi);
  static RationalInterval closed(Rational lo, Rational hi);

  bool contains(const Rational& x) const;
  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  std::string to_string() const;
};

// Sturm chain of the square-free part of a polynomial, stored as primitive
// integer polynomials. Build once, query many times.
class SturmChain {
 public:
  explicit SturmChain(const RationalPolynomial& p);

  // Sign variations of the chain at x (zeros skipped).
  int variations(const Rational& x) const;
  // Sign of the square-free part at x.
  int sign_at(const Rational& x) const;
  // Number of distinct real roots in iv, honouring open/closed ends.
  int count(const RationalInterval& iv) const;
  // Disjoint intervals inside iv, each containing exactly one root. A root
  // that lands exactly on a bisection point is reported as a small open
  // interval around it.
  std::vector<RationalInterval> isolate(const RationalInterval& iv) const;
  // Shrinks an isolating interval to width <= width.
  RationalInterval refine(const RationalInterval& iv, const Rational& width) const;

  std::size_t length() const { return chain_.size(); }
  int square_free_degree() const;

 private:
  void isolate_into(const RationalInterval& iv, int n_roots,
                    std::vector<RationalInterval>& out) const;
  std::vector<std::vector<BigInt>> chain_;
};

// Number of distinct real roots of p in iv. Throws std::domain_error for the
// zero polynomial ("indeterminate root set").
int root_count_in_interval(const RationalPolynomial& p, const RationalInterval& iv);

// Sub-interval of width <= width containing the unique root of p in iv.
// Throws std::invalid_argument unless iv isolates exactly one root.
RationalInterval refine_root(const RationalPolynomial& p, const RationalInterval& iv,
                             const Rational& width);

struct PowerFactor {
  BigInt base;
  long exponent = 0;
};

// prod base^exponent, exponents may be negative.
struct PowerProduct {
  std::vector<PowerFactor> factors;

  PowerProduct& times(BigInt base, long exponent);
  Rational value() const;
};

std::strong_ordering power_product_compare(const PowerProduct& lhs, const PowerProduct& rhs);

}  // namespace kstar
