#include "kstar/moments.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "kstar/landscape.hpp"
#include "kstar/pairing.hpp"
#include "kstar/thresholds.hpp"

namespace kstar {

namespace {

std::string dk_string(int d, int k) { return "(d,k)=(" + std::to_string(d) + "," + std::to_string(k) + ")"; }

long series_gap(int d, int k) {
  const long s = 2L * k - d;
  return 4L * k - d - 2 - s * s;
}

Decimal xlogx(const Decimal& x) { return x == 0 ? Decimal(0) : Decimal(x * log(x)); }

void require_range(int d, int k) {
  if (d < 1 || k < 1 || k > d) throw std::invalid_argument("need 1 <= k <= d, got " + dk_string(d, k));
}

void require_above_half_ey2(int d, int k) {
  if (d < 2 || !(2 * k > d && k <= d)) throw std::invalid_argument("need d/2 < k <= d, got " + dk_string(d, k));
}

}  // namespace

Rational cycle_lambda(int d, int j) {
  if (d < 2 || j < 1) throw std::invalid_argument("cycle_lambda needs d >= 2 and j >= 1");
  Rational r(pow(BigInt(d - 1), static_cast<unsigned long>(j)), BigInt(2L * j));
  r.canonicalize();
  return r;
}

CycleParams cycle_params(int d, int k, int j) {
  if (d < 3 || j < 1) throw std::invalid_argument("cycle_params needs d >= 3 and j >= 1");
  require_range(d, k);
  CycleParams c;
  c.j = j;
  c.lambda = cycle_lambda(d, j);
  c.delta = pow(make_rational(d - 2L * k + 1, d - 1), static_cast<unsigned long>(j));
  return c;
}

SeriesValue sum_lambda_delta_sq(int d, int k, int terms) {
  if (d < 3 || !(2 * k > d && k < d) || series_gap(d, k) <= 0)
    throw std::domain_error("series condition fails at " + dk_string(d, k));
  if (terms < 0) throw std::invalid_argument("sum_lambda_delta_sq: negative term count");
  SeriesValue out;
  out.closed = log(Decimal(d - 1) / Decimal(series_gap(d, k))) / 2;
  // lambda_j delta_j^2 = q^j / (2j), q = (d+1-2k)^2 / (d-1)
  const long r = d + 1 - 2L * k;
  const Decimal q = Decimal(r * r) / Decimal(d - 1);
  Decimal qj = 1;
  Decimal sum = 0;
  out.partial_sums.reserve(static_cast<std::size_t>(terms));
  for (int j = 1; j <= terms; ++j) {
    qj *= q;
    sum += qj / (2 * j);
    out.partial_sums.push_back(sum);
  }
  return out;
}

Decimal variance_ratio_limit(int d, int k) {
  const long gap = series_gap(d, k);
  if (d < 2 || gap <= 0) throw std::domain_error("series condition fails at " + dk_string(d, k));
  return sqrt(Decimal(d - 1) / Decimal(gap));
}

void require_divisible(long n, int d, int k) {
  if (n < 1) throw std::domain_error("n must be positive");
  if ((static_cast<long>(d) * n) % (2L * k) != 0)
    throw std::domain_error("2k must divide dn: d=" + std::to_string(d) + " k=" + std::to_string(k) +
                            " n=" + std::to_string(n));
}

Rational exact_EY(long n, int d, int k) {
  require_range(d, k);
  require_divisible(n, d, k);
  const long dn = static_cast<long>(d) * n;
  const long c = dn / (2L * k);
  Rational r(binomial(n, c) * pow(binomial(d, k), static_cast<unsigned long>(c)) * factorial(dn / 2),
             m_pairings(dn / 2));
  r.canonicalize();
  return r;
}

Decimal asympt_EY(long n, int d, int k) {
  require_above_half({d, k});
  require_divisible(n, d, k);
  const Decimal c = c_value({d, k}).value;
  const Decimal exponent = Decimal(static_cast<long>(d) * n) / Decimal(2L * k);
  return Decimal(k) / sqrt(Decimal(2 * k - d)) * exp(exponent * log(c));
}

Rational exact_EZ(long n, int d, long s) {
  if (n < 1 || d < 1) throw std::domain_error("exact_EZ needs n, d >= 1");
  const long dn = static_cast<long>(d) * n;
  if (dn % 2 != 0) throw std::domain_error("exact_EZ needs dn even");
  if (s < 0 || 2 * s > n) throw std::domain_error("exact_EZ needs 0 <= s <= n/2, got s=" + std::to_string(s));
  const long ds = static_cast<long>(d) * s;
  Rational r(binomial(n, s) * falling_factorial(dn - ds, ds) * m_pairings((dn - 2 * ds) / 2), m_pairings(dn / 2));
  r.canonicalize();
  return r;
}

Decimal hd_alpha(int d, const Rational& alpha) {
  if (d < 1) throw std::invalid_argument("hd_alpha needs d >= 1");
  if (alpha < 0 || alpha >= Rational(1, 2)) throw std::domain_error("hd_alpha needs 0 <= alpha < 1/2");
  const Decimal a = to_decimal(alpha);
  const Decimal one_minus = to_decimal(Rational(1) - alpha);
  const Decimal one_minus_2 = to_decimal(Rational(1) - 2 * alpha);
  return Decimal(d - 1) * xlogx(one_minus) - xlogx(a) - Decimal(d) / 2 * xlogx(one_minus_2);
}

BigInt ey2_domain_size(long n, int d, int k) {
  require_above_half_ey2(d, k);
  require_divisible(n, d, k);
  const long c = static_cast<long>(d) * n / (2L * k);
  const long lo = 2 * c - n;  // = (d-k) n / k
  const long m = d - k + 1;
  // #{B >= 0 : sum B <= t} = binom(t + m, m)
  BigInt size = binomial(c + m, m);
  if (lo > 0) size -= binomial(lo - 1 + m, m);
  return size;
}

namespace {

struct Ey2Sum {
  long n, c, half_dn;
  int k;
  const FactorialTable* fact;
  BigInt binom_dk;
  std::vector<BigInt> x;
  std::vector<long> b;
  BigInt total = 0;

  void visit(std::size_t i, long used) {
    if (i + 1 == x.size()) {
      const long lo = std::max(0L, 2 * c - n - used);
      for (long last = lo; used + last <= c; ++last) {
        b[i] = last;
        add_term();
      }
      return;
    }
    for (long v = 0; used + v <= c; ++v) {
      b[i] = v;
      visit(i + 1, used + v);
    }
  }

  void add_term() {
    const FactorialTable& f = *fact;
    long s = 0, gamma = 0;
    BigInt denom = 1;
    BigInt xs = 1;
    for (std::size_t i = 0; i < b.size(); ++i) {
      s += b[i];
      gamma += (k - static_cast<long>(i)) * b[i];
      denom *= f(b[i]);
      xs *= pow(x[i], static_cast<unsigned long>(b[i]));
    }
    denom *= f(c - s) * f(c - s) * f(n - 2 * c + s);
    BigInt multinomial;
    mpz_divexact(multinomial.get_mpz_t(), f(n).get_mpz_t(), denom.get_mpz_t());
    total += multinomial * pow(binom_dk, static_cast<unsigned long>(2 * (c - s))) * f(gamma) *
             f(half_dn - gamma) * xs;
  }
};

}  // namespace

Rational exact_EY2(long n, int d, int k, std::uint64_t cap) {
  const BigInt size = ey2_domain_size(n, d, k);
  if (size > BigInt(std::to_string(cap)))
    throw std::domain_error("second-moment domain has " + size.get_str() + " points, cap is " + std::to_string(cap));
  const long dn = static_cast<long>(d) * n;
  const FactorialTable fact(dn);
  Ey2Sum sum;
  sum.n = n;
  sum.c = dn / (2L * k);
  sum.half_dn = dn / 2;
  sum.k = k;
  sum.fact = &fact;
  sum.binom_dk = binomial(d, k);
  for (int i = 0; i <= d - k; ++i) {
    sum.x.push_back(xcoef(d, k, i));
  }
  sum.b.assign(sum.x.size(), 0);
  sum.visit(0, 0);
  Rational r(sum.total, m_pairings(dn / 2));
  r.canonicalize();
  return r;
}

MomentReport moment_report(long n, int d, int k, std::uint64_t cap) {
  require_above_half({d, k});
  MomentReport r;
  r.n = n;
  r.d = d;
  r.k = k;
  r.exact_EY = exact_EY(n, d, k);
  r.asympt_EY = asympt_EY(n, d, k);
  if (ey2_domain_size(n, d, k) <= BigInt(std::to_string(cap))) r.exact_EY2 = exact_EY2(n, d, k, cap);
  if (series_gap(d, k) > 0) {
    r.variance_ratio_limit = variance_ratio_limit(d, k);
    r.sum_lambda_delta_sq = sum_lambda_delta_sq(d, k).closed;
  }
  return r;
}

}  // namespace kstar
