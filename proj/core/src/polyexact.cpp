#include "kstar/polyexact.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kstar {

namespace {

using IntPoly = std::vector<BigInt>;

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// Divides by the (positive) content; signs are preserved.
void make_primitive(IntPoly& p) {
  BigInt g = content(p);
  if (g == 0 || g == 1) return;
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Positive multiple of p with integer coprime coefficients.
IntPoly to_primitive_int(const RationalPolynomial& p) {
  BigInt lcm_den = 1;
  for (const auto& c : p.coeffs())
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    BigInt v = c.get_num() * (lcm_den / c.get_den());
    out.push_back(v);
  }
  make_primitive(out);
  return out;
}

// lc(b)^(deg a - deg b + 1) * a  mod  b, for deg a >= deg b.
IntPoly pseudo_remainder(IntPoly r, const IntPoly& b) {
  const std::size_t n = b.size() - 1;
  if (r.size() < b.size()) return r;
  const BigInt& lc = b.back();
  for (std::size_t i = r.size() - 1;; --i) {
    BigInt c = r[i];
    for (std::size_t j = 0; j < i; ++j) r[j] *= lc;
    r[i] = 0;
    if (c != 0) {
      for (std::size_t j = 0; j < n; ++j) r[i - n + j] -= c * b[j];
    }
    if (i == n) break;
  }
  r.resize(n);
  trim(r);
  return r;
}

int sign_at(const IntPoly& p, const Rational& x) {
  if (p.empty()) return 0;
  // Homogenised Horner: sum c_i num^i den^(deg-i); den > 0 keeps the sign.
  const BigInt& num = x.get_num();
  const BigInt& den = x.get_den();
  BigInt acc = p.back();
  BigInt den_pow = 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    den_pow *= den;
    acc = acc * num + p[i] * den_pow;
  }
  return sgn(acc);
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& g) {
  auto to_rat = [](const IntPoly& p) {
    std::vector<Rational> c;
    for (const auto& v : p) c.emplace_back(v);
    return RationalPolynomial(std::move(c));
  };
  auto [q, r] = to_rat(a).divmod(to_rat(g));
  if (!r.is_zero()) throw std::logic_error("exact_quotient: non-zero remainder");
  return to_primitive_int(q);
}

}  // namespace

// ---------------------------------------------------------------------------
// RationalPolynomial

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) {
  return RationalPolynomial(std::vector<Rational>{c});
}

RationalPolynomial RationalPolynomial::monomial(const Rational& c, std::size_t power) {
  std::vector<Rational> v(power + 1, Rational(0));
  v[power] = c;
  return RationalPolynomial(std::move(v));
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coeff(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

const Rational& RationalPolynomial::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return coeffs_.back();
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Decimal RationalPolynomial::evaluate(const Decimal& x) const {
  Decimal acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_decimal(*it);
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return RationalPolynomial(std::move(d));
}

std::pair<std::size_t, RationalPolynomial> RationalPolynomial::strip_x_power() const {
  std::size_t m = 0;
  while (m < coeffs_.size() && coeffs_[m] == 0) ++m;
  if (m == coeffs_.size()) return {0, *this};
  return {m, RationalPolynomial(std::vector<Rational>(coeffs_.begin() + static_cast<long>(m), coeffs_.end()))};
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const Rational& c) {
  for (auto& v : coeffs_) v *= c;
  trim();
  return *this;
}

std::pair<RationalPolynomial, RationalPolynomial> RationalPolynomial::divmod(
    const RationalPolynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const std::size_t n = divisor.coeffs_.size();
  if (rem.size() < n) return {RationalPolynomial(), *this};
  std::vector<Rational> quot(rem.size() - n + 1, Rational(0));
  const Rational& lc = divisor.coeffs_.back();
  for (std::size_t step = quot.size(); step-- > 0;) {
    const std::size_t i = step + n - 1;
    if (rem[i] == 0) continue;
    Rational c = rem[i] / lc;
    quot[step] = c;
    for (std::size_t j = 0; j < n; ++j) rem[step + j] -= c * divisor.coeffs_[j];
  }
  rem.resize(n - 1);
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rational a = abs(c);
    if (a != 1 || i == 0) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b) {
  RationalPolynomial x = a, y = b;
  while (!y.is_zero()) {
    auto r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x * (Rational(1) / x.leading());
}

RationalPolynomial square_free_part(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("square_free_part of zero polynomial");
  if (p.degree() == 0) return RationalPolynomial::constant(Rational(1));
  RationalPolynomial g = gcd(p, p.derivative());
  RationalPolynomial q = p.divmod(g).first;
  return q * (Rational(1) / q.leading());
}

// ---------------------------------------------------------------------------
// RationalInterval

RationalInterval RationalInterval::open(Rational lo, Rational hi) {
  if (!(lo < hi)) throw std::invalid_argument("RationalInterval: lo must be < hi");
  return {std::move(lo), std::move(hi), true, true};
}

RationalInterval RationalInterval::closed(Rational lo, Rational hi) {
  if (!(lo < hi)) throw std::invalid_argument("RationalInterval: lo must be < hi");
  return {std::move(lo), std::move(hi), false, false};
}

bool RationalInterval::contains(const Rational& x) const {
  bool above = lo_open ? x > lo : x >= lo;
  bool below = hi_open ? x < hi : x <= hi;
  return above && below;
}

std::string RationalInterval::to_string() const {
  return std::string(lo_open ? "(" : "[") + lo.get_str() + ", " + hi.get_str() + (hi_open ? ")" : "]");
}

// ---------------------------------------------------------------------------
// SturmChain

SturmChain::SturmChain(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("indeterminate root set");
  IntPoly p0 = to_primitive_int(p);
  chain_.push_back(p0);
  if (p0.size() <= 1) return;
  chain_.push_back(to_primitive_int(p.derivative()));
  while (chain_.back().size() > 1) {
    const IntPoly& a = chain_[chain_.size() - 2];
    const IntPoly& b = chain_.back();
    IntPoly r = pseudo_remainder(a, b);
    if (r.empty()) break;
    // prem = lc(b)^delta * rem; the next element must be a negative multiple of rem.
    const std::size_t delta = a.size() - b.size() + 1;
    const bool multiplier_positive = sgn(b.back()) > 0 || delta % 2 == 0;
    if (multiplier_positive) {
      for (auto& c : r) c = -c;
    }
    make_primitive(r);
    chain_.push_back(std::move(r));
  }
  // The last element is gcd(p, p'). A non-constant gcd means repeated roots:
  // dividing every element by it yields the chain of the square-free part.
  if (chain_.back().size() > 1) {
    IntPoly g = chain_.back();
    for (auto& q : chain_) q = exact_quotient(q, g);
    // exact_quotient normalises to positive content, so the overall sign of
    // each element is sign(q/g); consistent division keeps variations valid.
  }
}

int SturmChain::square_free_degree() const { return static_cast<int>(chain_.front().size()) - 1; }

int SturmChain::sign_at(const Rational& x) const { return kstar::sign_at(chain_.front(), x); }

int SturmChain::variations(const Rational& x) const {
  int count = 0;
  int last = 0;
  for (const auto& q : chain_) {
    int s = kstar::sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int SturmChain::count(const RationalInterval& iv) const {
  if (!(iv.lo < iv.hi)) return (!iv.lo_open && !iv.hi_open && iv.lo == iv.hi && sign_at(iv.lo) == 0) ? 1 : 0;
  // variations(a) - variations(b) counts roots in (a, b].
  int n = variations(iv.lo) - variations(iv.hi);
  if (iv.hi_open && sign_at(iv.hi) == 0) --n;
  if (!iv.lo_open && sign_at(iv.lo) == 0) ++n;
  return n;
}

void SturmChain::isolate_into(const RationalInterval& iv, int n_roots,
                              std::vector<RationalInterval>& out) const {
  if (n_roots == 0) return;
  if (n_roots == 1) {
    out.push_back(iv);
    return;
  }
  Rational mid = iv.midpoint();
  RationalInterval left{iv.lo, mid, iv.lo_open, true};
  RationalInterval right{mid, iv.hi, true, iv.hi_open};
  int n_left = count(left);
  if (sign_at(mid) == 0) {
    Rational eps = iv.width() / 8;
    // shrink until the neighbourhood isolates mid alone
    while (count(RationalInterval::open(mid - eps, mid + eps)) > 1) eps /= 2;
    isolate_into({iv.lo, mid - eps, iv.lo_open, false}, count({iv.lo, mid - eps, iv.lo_open, false}), out);
    out.push_back(RationalInterval::open(mid - eps, mid + eps));
    isolate_into({mid + eps, iv.hi, false, iv.hi_open}, count({mid + eps, iv.hi, false, iv.hi_open}), out);
    return;
  }
  isolate_into(left, n_left, out);
  isolate_into(right, n_roots - n_left, out);
}

std::vector<RationalInterval> SturmChain::isolate(const RationalInterval& iv) const {
  std::vector<RationalInterval> out;
  isolate_into(iv, count(iv), out);
  return out;
}

RationalInterval SturmChain::refine(const RationalInterval& iv, const Rational& width) const {
  if (width <= 0) throw std::invalid_argument("refine: width must be positive");
  if (count(iv) != 1) throw std::invalid_argument("refine: interval does not isolate exactly one root");
  RationalInterval cur = iv;
  while (cur.width() > width) {
    Rational mid = cur.midpoint();
    if (sign_at(mid) == 0) {
      Rational eps = std::min(width, cur.width()) / 4;
      return RationalInterval::open(mid - eps, mid + eps);
    }
    RationalInterval left{cur.lo, mid, cur.lo_open, true};
    if (count(left) == 1) cur = left;
    else cur = RationalInterval{mid, cur.hi, true, cur.hi_open};
  }
  return cur;
}

int root_count_in_interval(const RationalPolynomial& p, const RationalInterval& iv) {
  if (p.is_zero()) throw std::domain_error("indeterminate root set");
  return SturmChain(p).count(iv);
}

RationalInterval refine_root(const RationalPolynomial& p, const RationalInterval& iv, const Rational& width) {
  return SturmChain(p).refine(iv, width);
}

// ---------------------------------------------------------------------------
// PowerProduct

PowerProduct& PowerProduct::times(BigInt base, long exponent) {
  if (base < 1) throw std::invalid_argument("PowerProduct: bases must be >= 1");
  factors.push_back({std::move(base), exponent});
  return *this;
}

Rational PowerProduct::value() const {
  BigInt num = 1, den = 1;
  for (const auto& f : factors) {
    if (f.base < 1) throw std::invalid_argument("PowerProduct: bases must be >= 1");
    if (f.exponent >= 0) num *= pow(f.base, static_cast<unsigned long>(f.exponent));
    else den *= pow(f.base, static_cast<unsigned long>(-f.exponent));
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::strong_ordering power_product_compare(const PowerProduct& lhs, const PowerProduct& rhs) {
  // Cross-multiply so both sides are integers.
  BigInt left = 1, right = 1;
  auto accumulate = [](const PowerProduct& p, BigInt& same, BigInt& other) {
    for (const auto& f : p.factors) {
      if (f.base < 1) throw std::invalid_argument("PowerProduct: bases must be >= 1");
      if (f.exponent >= 0) same *= pow(f.base, static_cast<unsigned long>(f.exponent));
      else other *= pow(f.base, static_cast<unsigned long>(-f.exponent));
    }
  };
  accumulate(lhs, left, right);
  accumulate(rhs, right, left);
  int c = cmp(left, right);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace kstar
