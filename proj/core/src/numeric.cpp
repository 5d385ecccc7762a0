#include "kstar/numeric.hpp"

#include <sstream>
#include <stdexcept>

namespace kstar {

Decimal to_decimal(const Rational& q) {
  Decimal r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Decimal to_decimal(const BigInt& z) {
  Decimal r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

std::string format_decimal(const Decimal& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

std::string format_fixed(const Decimal& x, int places) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(places);
  os << x;
  return os.str();
}

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

BigInt factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt falling_factorial(long n, long k) {
  if (k < 0) throw std::invalid_argument("falling_factorial: negative length");
  BigInt r = 1;
  for (long i = 0; i < k; ++i) r *= (n - i);
  return r;
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational pow(const Rational& base, unsigned long exp) {
  Rational r(pow(BigInt(base.get_num()), exp), pow(BigInt(base.get_den()), exp));
  r.canonicalize();
  return r;
}

FactorialTable::FactorialTable(long n) {
  if (n < 0) throw std::invalid_argument("FactorialTable: negative size");
  table_.resize(static_cast<std::size_t>(n) + 1);
  table_[0] = 1;
  for (long i = 1; i <= n; ++i) table_[i] = table_[i - 1] * i;
}

const BigInt& FactorialTable::operator()(long i) const {
  if (i < 0 || i >= size())
    throw std::out_of_range("FactorialTable: index " + std::to_string(i));
  return table_[static_cast<std::size_t>(i)];
}

int sign(const Rational& q) { return sgn(q); }
int sign(const BigInt& z) { return sgn(z); }

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

}  // namespace kstar
