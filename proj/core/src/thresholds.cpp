#include "kstar/thresholds.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kstar {

namespace {

std::string describe(const Params& p) {
  return "(d,k)=(" + std::to_string(p.d) + "," + std::to_string(p.k) + ")";
}

void require_d(int d) {
  if (d < 3) throw std::invalid_argument("d must be >= 3, got " + std::to_string(d));
}

// 4k - d - 2 - (2k - d)^2; positive iff P2 holds.
long p2_gap(const Params& p) {
  const long s = 2L * p.k - p.d;
  return 4L * p.k - p.d - 2 - s * s;
}

// Sign of poly on the closed hull of iv, or 0 when poly vanishes somewhere there.
int constant_sign_on(const RationalPolynomial& poly, const SturmChain& chain, const RationalInterval& iv) {
  RationalInterval hull = RationalInterval::closed(iv.lo, iv.hi);
  if (chain.count(hull) != 0) return 0;
  return sign(poly(iv.midpoint()));
}

}  // namespace

void require_above_half(const Params& p) {
  require_d(p.d);
  if (!(2 * p.k > p.d && p.k < p.d))
    throw std::invalid_argument("need d/2 < k < d, got " + describe(p));
}

RationalPolynomial build_f(const Params& p) {
  require_above_half(p);
  const BigInt mu = binomial(p.d, p.k);
  std::vector<Rational> c(static_cast<std::size_t>(p.k) + 1, Rational(0));
  for (int i = 0; i <= p.d - p.k; ++i) {
    c[static_cast<std::size_t>(p.k - i)] = Rational(binomial(p.k, i) * binomial(p.d - p.k, i), mu);
  }
  return RationalPolynomial(std::move(c));
}

RationalPolynomial build_g(const Params& p) {
  require_above_half(p);
  const BigInt mu = binomial(p.d, p.k);
  std::vector<Rational> c;
  for (int j = 0; j <= p.d - p.k; ++j) c.emplace_back(binomial(p.k, j) * binomial(p.d - p.k, j), mu);
  return RationalPolynomial(std::move(c));
}

RationalPolynomial build_y(const Params& p) {
  const RationalPolynomial f = build_f(p);
  RationalPolynomial x_plus_one({Rational(1), Rational(1)});
  return x_plus_one * f.derivative() * make_rational(1, p.k);
}

RationalPolynomial build_stationary_polynomial(const Params& p) {
  const RationalPolynomial f = build_f(p);
  const RationalPolynomial y = build_y(p);
  RationalPolynomial diff = y - f;
  return diff * diff - f + y * make_rational(2L * (p.d - p.k), p.d);
}

Decimal eta(const Params& p, const Decimal& x) {
  require_d(p.d);
  if (2 * p.k <= p.d) throw std::invalid_argument("eta needs 2k > d, got " + describe(p));
  if (x < 0) throw std::invalid_argument("eta needs x >= 0");
  const Decimal fx = build_f(p).evaluate(x);
  const Decimal dk = p.d - p.k;
  const Decimal s = 2 * p.k - p.d;
  return s / (dk + sqrt(dk * dk + Decimal(p.d) * s * fx));
}

Decimal fhat(const Params& p, const Decimal& x) {
  if (x <= 0) throw std::invalid_argument("fhat needs x > 0");
  const RationalPolynomial f = build_f(p);
  const Decimal fx = f.evaluate(x);
  const Decimal fpx = f.derivative().evaluate(x);
  return Decimal(p.k) * (1 + eta(p, x)) * fx / ((x + 1) * fpx) - 1;
}

bool check_P2(const Params& p) {
  require_d(p.d);
  return p2_gap(p) > 0;
}

RationalInterval p1_interval(const Params& p) {
  require_above_half(p);
  const long gap = p2_gap(p);
  if (gap <= 0) throw std::domain_error("P1 undefined without P2 at " + describe(p));
  const long s = 2L * p.k - p.d;
  Rational ratio(BigInt(s * s) * p.d, BigInt(p.k) * (p.d - p.k) * gap);
  ratio.canonicalize();
  Rational lo = Rational(1) / (Rational(1) + ratio);
  Rational hi(5L * p.k - 2L * p.d, p.d - p.k);
  hi.canonicalize();
  return RationalInterval::open(lo, hi);
}

P1Detail check_P1_detail(const Params& p) {
  require_above_half(p);
  if (!check_P2(p)) throw std::domain_error("P1 undefined without P2 at " + describe(p));
  const RationalInterval iv = p1_interval(p);
  if (!iv.contains(Rational(1))) throw std::logic_error("x=1 outside the P1 interval at " + describe(p));

  const RationalPolynomial f = build_f(p);
  const RationalPolynomial y = build_y(p);
  const RationalPolynomial q = build_stationary_polynomial(p);
  if (q(Rational(1)) != 0) throw std::logic_error("Q(1) != 0 at " + describe(p));

  // Roots at x = 0 lie outside the interval; drop them to shrink the chain.
  const SturmChain chain(q.strip_x_power().second);
  const RationalPolynomial above = y - f;                                    // branch: y > f
  const RationalPolynomial inside = f - y * make_rational(2L * (p.d - p.k), p.d);  // f > 2(d-k)y/d
  const SturmChain above_chain(above);
  const SturmChain inside_chain(inside);

  P1Detail out;
  const auto roots = chain.isolate(iv);
  out.q_roots_in_interval = static_cast<int>(roots.size());
  bool saw_one = false;
  for (const auto& root : roots) {
    if (root.contains(Rational(1))) {
      saw_one = true;
      ++out.surviving_roots;
      continue;
    }
    RationalInterval cur = root;
    int s_above = 0, s_inside = 0;
    for (int iter = 0;; ++iter) {
      s_above = constant_sign_on(above, above_chain, cur);
      s_inside = constant_sign_on(inside, inside_chain, cur);
      if (s_above != 0 && s_inside != 0) break;
      if (iter > 4000) throw std::logic_error("branch constraint undecidable at " + describe(p));
      cur = chain.refine(cur, cur.width() / 2);
    }
    if (s_above > 0 && s_inside > 0) {
      ++out.surviving_roots;
      out.spurious.push_back(cur);
    }
  }
  if (!saw_one) throw std::logic_error("x=1 not isolated at " + describe(p));
  out.holds = out.spurious.empty();
  return out;
}

bool check_P1(const Params& p) { return check_P1_detail(p).holds; }

bool kplus_inequality(const Params& p) {
  require_above_half(p);
  const long d = p.d, k = p.k;
  PowerProduct lhs;
  lhs.times(d, d * (d - 1));
  PowerProduct rhs;
  rhs.times(2 * k - d, 2 * k - d).times(2, d * d - 2 * k).times(k, k * (d - 2)).times(d - k, d * (d - k));
  return power_product_compare(lhs, rhs) == std::strong_ordering::greater;
}

int compute_kplus(int d) {
  require_d(d);
  for (int k = d - 1; 2 * k > d; --k) {
    if (kplus_inequality({d, k})) return k;
  }
  throw std::logic_error("no k in (d/2, d) satisfies the independent-set inequality, d=" + std::to_string(d));
}

int compute_ksscm(int d) {
  require_d(d);
  int best = d / 2;  // no admissible k yet
  for (int k = d / 2 + 1; k < d; ++k) {
    const Params p{d, k};
    if (!check_P2(p) || !check_P1(p)) break;
    best = k;
  }
  return best;
}

CValue c_value(const Params& p) {
  require_above_half(p);
  const long d = p.d, k = p.k;
  const Decimal dd = d;
  const Decimal log_c = log(to_decimal(binomial(d, k))) + Decimal(2 * k) / dd * log(Decimal(k)) -
                        Decimal(k * (d - 2)) / dd * log(Decimal(2)) - log(dd) -
                        Decimal(2 * k - d) / dd * log(Decimal(2 * k - d));
  PowerProduct num;
  num.times(binomial(d, k), d).times(k, 2 * k);
  PowerProduct den;
  den.times(2, k * (d - 2)).times(d, d).times(2 * k - d, 2 * k - d);
  return {exp(log_c), power_product_compare(num, den) == std::strong_ordering::greater};
}

ThresholdReport threshold_report(int d, std::optional<int> k) {
  ThresholdReport r;
  r.d = d;
  r.kplus = compute_kplus(d);
  r.ksscm = compute_ksscm(d);
  r.k = k.value_or(r.ksscm);
  const Params p{d, r.k};
  require_above_half(p);
  r.p2_holds = check_P2(p);
  r.p1_holds = r.p2_holds && check_P1(p);
  const CValue c = c_value(p);
  r.c_value = c.value;
  r.c_gt_one = c.gt_one;
  return r;
}

std::vector<FhatPoint> plot_fhat(const Params& p, const std::vector<Decimal>& grid) {
  require_above_half(p);
  for (const auto& x : grid) {
    if (x <= 0) throw std::invalid_argument("plot_fhat: grid values must be > 0");
  }
  std::vector<FhatPoint> out;
  out.reserve(grid.size());
  for (const auto& x : grid) out.push_back({x, fhat(p, x)});
  return out;
}

std::vector<Decimal> default_fhat_grid(const Params& p, int points) {
  if (points < 1) throw std::invalid_argument("default_fhat_grid: points must be >= 1");
  const RationalInterval iv = p1_interval(p);
  std::vector<Rational> xs;
  for (int i = 1; i <= points; ++i) xs.push_back(iv.lo + iv.width() * make_rational(i, points + 1));
  if (std::find(xs.begin(), xs.end(), Rational(1)) == xs.end()) xs.emplace_back(1);
  std::sort(xs.begin(), xs.end());
  std::vector<Decimal> grid;
  grid.reserve(xs.size());
  for (const auto& x : xs) grid.push_back(to_decimal(x));
  return grid;
}

int count_sign_changes(const std::vector<FhatPoint>& series, const Decimal& zero_tol) {
  int changes = 0;
  int last = 0;
  for (const auto& pt : series) {
    if (abs(pt.value) < zero_tol) continue;
    const int s = pt.value > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Decimal a_function(const Params& p, const Decimal& t) {
  const RationalPolynomial g = build_g(p);
  const Decimal gt = g.evaluate(t);
  const Decimal gpt = g.derivative().evaluate(t);
  return (t + 1) * gt - Decimal(p.d) / Decimal(2 * (p.d - p.k)) * gt - t * (t + 1) * gpt / Decimal(p.k);
}

ACheck check_A(const Params& p, const Decimal& t) {
  require_above_half(p);
  if (t < 1) throw std::invalid_argument("check_A needs t >= 1");
  const Decimal closed = Decimal(p.k) * Decimal(p2_gap(p)) / Decimal(2L * p.d * (p.d - 1));
  return {a_function(p, t), closed};
}

}  // namespace kstar
