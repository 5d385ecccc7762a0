// Exact and high-precision number types shared by every kstar module.
//
// BigInt / Rational are GMP integers and canonical rationals. Decimal is a
// 60-digit MPFR float used only for reported values; pass/fail decisions are
// always made on BigInt / Rational.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

namespace kstar {

using BigInt = mpz_class;
using Rational = mpq_class;

inline constexpr unsigned kDecimalDigits = 60;
using Decimal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<kDecimalDigits>,
    boost::multiprecision::et_off>;

Decimal to_decimal(const Rational& q);
Decimal to_decimal(const BigInt& z);

// Shortest round-trip-ish rendering with `digits` significant digits.
std::string format_decimal(const Decimal& x, int digits);

// Rounds half away from zero to `places` decimals, e.g. "1.299".
std::string format_fixed(const Decimal& x, int places);

Rational make_rational(long num, long den = 1);

BigInt binomial(long n, long k);
BigInt factorial(long n);
BigInt falling_factorial(long n, long k);  // n (n-1) ... (n-k+1)
BigInt pow(const BigInt& base, unsigned long exp);
Rational pow(const Rational& base, unsigned long exp);

// Factorials 0!..n! computed once; used by the moment sums.
class FactorialTable {
 public:
  explicit FactorialTable(long n);
  const BigInt& operator()(long i) const;
  long size() const { return static_cast<long>(table_.size()); }

 private:
  std::vector<BigInt> table_;
};

int sign(const Rational& q);
int sign(const BigInt& z);

std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

}  // namespace kstar
