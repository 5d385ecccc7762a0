#include "kstar/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "kstar/parallel.hpp"
#include "kstar/random.hpp"

namespace kstar {

namespace {

template <class T>
T from_decimal(const Decimal& x) {
  if constexpr (std::is_same_v<T, Decimal>) {
    return x;
  } else {
    return x.convert_to<T>();
  }
}

// Arguments of 0 log 0 terms may drift slightly below zero on the boundary.
template <class T>
T slack() {
  if constexpr (std::is_same_v<T, Decimal>) {
    return T("1e-45");
  } else {
    return T(1e-12);
  }
}

template <class T>
T xlogx(const T& x) {
  using std::log;
  if (x < 0) {
    if (x > -slack<T>()) return T(0);
    throw std::domain_error("phi evaluated outside K");
  }
  if (x == 0) return T(0);
  return x * log(x);
}

template <class T>
struct Consts {
  T log_binom;
  Vec<T> log_x;
  T half_d;      // d/2
  T beta_hi;     // d/(2k)
  T beta_shift;  // 1 - d/k
};

template <class T>
Consts<T> make_consts(const Params& p) {
  require_above_half(p);
  Consts<T> c;
  c.log_binom = from_decimal<T>(log(to_decimal(binomial(p.d, p.k))));
  for (int i = 0; i <= p.d - p.k; ++i) c.log_x.push_back(from_decimal<T>(log(to_decimal(xcoef(p.d, p.k, i)))));
  c.half_d = T(p.d) / 2;
  c.beta_hi = T(p.d) / T(2 * p.k);
  c.beta_shift = 1 - T(p.d) / T(p.k);
  return c;
}

template <class T>
void require_dimension(const Params& p, const Vec<T>& b) {
  if (b.size() != static_cast<std::size_t>(p.d - p.k + 1))
    throw std::invalid_argument("landscape point must have d-k+1 = " + std::to_string(p.d - p.k + 1) +
                                " coordinates, got " + std::to_string(b.size()));
}

template <class T>
T phi_with(const Params& p, const Consts<T>& c, const Vec<T>& b) {
  const T beta = beta_of(b);
  const T gamma = gamma_of(p, b);
  T out = xlogx(gamma) + xlogx(T(c.half_d - gamma)) - 2 * xlogx(T(c.beta_hi - beta)) -
          xlogx(T(c.beta_shift + beta)) - 2 * beta * c.log_binom;
  for (std::size_t i = 0; i < b.size(); ++i) out += b[i] * c.log_x[i] - xlogx(b[i]);
  return out;
}

struct Interior {
  bool ok;
  std::string why;
};

template <class T>
Interior interior(const Params& p, const Consts<T>& c, const Vec<T>& b) {
  for (const auto& x : b) {
    if (!(x > 0)) return {false, "a coordinate is zero"};
  }
  const T beta = beta_of(b);
  const T gamma = gamma_of(p, b);
  if (!(beta < c.beta_hi)) return {false, "beta at its upper bound"};
  if (!(c.beta_shift + beta > 0)) return {false, "beta at its lower bound"};
  if (!(gamma > 0 && gamma < c.half_d)) return {false, "gamma outside (0, d/2)"};
  return {true, ""};
}

template <class T>
Vec<T> grad_with(const Params& p, const Consts<T>& c, const Vec<T>& b) {
  using std::log;
  const T beta = beta_of(b);
  const T gamma = gamma_of(p, b);
  const T lg = log(gamma) - log(T(c.half_d - gamma));
  const T common = -2 * c.log_binom + 2 * log(T(c.beta_hi - beta)) - log(T(c.beta_shift + beta));
  Vec<T> g(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    g[i] = common + c.log_x[i] + T(p.k - static_cast<int>(i)) * lg - log(b[i]);
  }
  return g;
}

template <class T>
Mat<T> hessian_with(const Params& p, const Consts<T>& c, const Vec<T>& b) {
  const T beta = beta_of(b);
  const T gamma = gamma_of(p, b);
  const T curv = 1 / gamma + 1 / T(c.half_d - gamma);
  const T flat = -2 / T(c.beta_hi - beta) - 1 / T(c.beta_shift + beta);
  const auto m = static_cast<Eigen::Index>(b.size());
  Mat<T> h(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      h(i, j) = T((p.k - i) * (p.k - j)) * curv + flat;
    }
    h(i, i) -= 1 / b[static_cast<std::size_t>(i)];
  }
  return h;
}

long series_gap(const Params& p) {
  const long s = 2L * p.k - p.d;
  return 4L * p.k - p.d - 2 - s * s;
}

}  // namespace

BigInt xcoef(int d, int k, int i) {
  if (d < 0 || k < 0 || k > d || i < 0 || i > d - k || i > k)
    throw std::invalid_argument("xcoef index out of range: (d,k,i)=(" + std::to_string(d) + "," + std::to_string(k) +
                                "," + std::to_string(i) + ")");
  return factorial(d) / (factorial(k - i) * factorial(d - k - i) * factorial(i) * factorial(i));
}

BStar bstar(const Params& p) {
  require_above_half(p);
  const BigInt binom = binomial(p.d, p.k);
  Rational scale(BigInt(p.d) * p.d, BigInt(4) * p.k * p.k * binom * binom);
  scale.canonicalize();
  BStar out;
  for (int i = 0; i <= p.d - p.k; ++i) {
    Rational bi = scale * Rational(xcoef(p.d, p.k, i));
    bi.canonicalize();
    out.b.push_back(bi);
    out.beta += bi;
    out.gamma += (p.k - i) * bi;
    out.second += (p.k - i) * (p.k - i) * bi;
  }
  return out;
}

std::vector<Decimal> bstar_decimal(const Params& p) {
  std::vector<Decimal> out;
  for (const auto& q : bstar(p).b) out.push_back(to_decimal(q));
  return out;
}

template <class T>
T beta_of(const Vec<T>& b) {
  T s = 0;
  for (const auto& x : b) s += x;
  return s;
}

template <class T>
T gamma_of(const Params& p, const Vec<T>& b) {
  T s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) s += T(p.k - static_cast<int>(i)) * b[i];
  return s;
}

bool in_K(const Params& p, const Vec<double>& b, double tol) {
  require_dimension(p, b);
  for (double x : b) {
    if (x < -tol) return false;
  }
  const double beta = beta_of(b);
  return beta >= double(p.d - p.k) / p.k - tol && beta <= double(p.d) / (2.0 * p.k) + tol;
}

template <class T>
T phi(const Params& p, const Vec<T>& b) {
  require_dimension(p, b);
  return phi_with(p, make_consts<T>(p), b);
}

template <class T>
T psi(const Params& p, const Vec<T>& b) {
  using std::sqrt;
  require_dimension(p, b);
  const Consts<T> c = make_consts<T>(p);
  const Interior in = interior(p, c, b);
  if (!in.ok) throw std::domain_error("psi undefined: " + in.why);
  const T beta = beta_of(b);
  const T gamma = gamma_of(p, b);
  T prod = 1;
  for (const auto& x : b) prod *= x;
  const T top = gamma * (c.half_d - gamma);
  const T gap = c.beta_hi - beta;
  return sqrt(T(top / (gap * gap * (c.beta_shift + beta) * prod)));
}

template <class T>
Vec<T> grad_phi(const Params& p, const Vec<T>& b) {
  require_dimension(p, b);
  const Consts<T> c = make_consts<T>(p);
  const Interior in = interior(p, c, b);
  if (!in.ok) throw std::domain_error("gradient undefined: " + in.why);
  return grad_with(p, c, b);
}

template <class T>
Mat<T> hessian_phi(const Params& p, const Vec<T>& b) {
  require_dimension(p, b);
  const Consts<T> c = make_consts<T>(p);
  const Interior in = interior(p, c, b);
  if (!in.ok) throw std::domain_error("Hessian undefined: " + in.why);
  return hessian_with(p, c, b);
}

template double beta_of(const Vec<double>&);
template Decimal beta_of(const Vec<Decimal>&);
template double gamma_of(const Params&, const Vec<double>&);
template Decimal gamma_of(const Params&, const Vec<Decimal>&);
template double phi(const Params&, const Vec<double>&);
template Decimal phi(const Params&, const Vec<Decimal>&);
template double psi(const Params&, const Vec<double>&);
template Decimal psi(const Params&, const Vec<Decimal>&);
template Vec<double> grad_phi(const Params&, const Vec<double>&);
template Vec<Decimal> grad_phi(const Params&, const Vec<Decimal>&);
template Mat<double> hessian_phi(const Params&, const Vec<double>&);
template Mat<Decimal> hessian_phi(const Params&, const Vec<Decimal>&);

Decimal phi_bstar_closed(const Params& p) {
  require_above_half(p);
  const Decimal d = p.d, k = p.k;
  return d * (k - 2) / (2 * k) * log(d) + 2 * log(k) - (d - 2) * log(Decimal(2)) -
         (2 * k - d) / k * log(Decimal(2 * k - d));
}

Decimal psi_bstar_closed(const Params& p) {
  Decimal prod = 1;
  for (const auto& x : bstar_decimal(p)) prod *= x;
  const Decimal k = p.k;
  const Decimal s = 2 * p.k - p.d;
  return 2 * k * k * k / (s * s) / sqrt(prod);
}

Decimal phi_corner_closed(const Params& p) {
  require_above_half(p);
  const Decimal d = p.d, k = p.k;
  return d * (k - 1) / (2 * k) * log(d) + log(k) - (2 * k - d) / (2 * k) * log(Decimal(2 * k - d)) -
         (d - 2) / 2 * log(Decimal(2)) - d / (2 * k) * log(to_decimal(binomial(p.d, p.k)));
}

std::vector<Decimal> corner_point(const Params& p) {
  require_above_half(p);
  std::vector<Decimal> a(static_cast<std::size_t>(p.d - p.k + 1), Decimal(0));
  a[0] = Decimal(p.d) / Decimal(2 * p.k);
  return a;
}

Mat<Decimal> NegHessianStructure::matrix() const {
  const auto m = static_cast<Eigen::Index>(diag.size());
  Mat<Decimal> out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      out(i, j) = v[ui] * v[uj] - w[ui] * w[uj] + (i == j ? diag[ui] : Decimal(0));
    }
  }
  return out;
}

NegHessianStructure neg_hessian_structure(const Params& p) {
  NegHessianStructure s;
  const Decimal d = p.d, k = p.k;
  const Decimal vi = 2 * k / (2 * k - d) * sqrt((4 * k - d) / d);
  const Decimal root = sqrt(Decimal(8) / d);
  int i = 0;
  for (const auto& b : bstar_decimal(p)) {
    s.diag.push_back(1 / b);
    s.v.push_back(vi);
    s.w.push_back(Decimal(p.k - i) * root);
    ++i;
  }
  return s;
}

Decimal rank2_determinant(const std::vector<Decimal>& diag, const std::vector<Decimal>& v,
                          const std::vector<Decimal>& w) {
  if (diag.size() != v.size() || diag.size() != w.size())
    throw std::invalid_argument("rank2_determinant: size mismatch");
  Decimal vv = 0, ww = 0, vw = 0, prod = 1;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    vv += v[i] * v[i] / diag[i];
    ww += w[i] * w[i] / diag[i];
    vw += v[i] * w[i] / diag[i];
    prod *= diag[i];
  }
  return ((1 + vv) * (1 - ww) + vw * vw) * prod;
}

Decimal det_negH_closed(const Params& p) {
  require_above_half(p);
  const long gap = series_gap(p);
  if (gap <= 0) throw std::domain_error("det(-H*) closed form needs 4k-d-2 > (2k-d)^2");
  Decimal inv_prod = 1;
  for (const auto& b : bstar_decimal(p)) inv_prod /= b;
  const Decimal k = p.k;
  const Decimal s = 2 * p.k - p.d;
  return 2 * k * k / (Decimal(p.d - 1) * s * s) * Decimal(gap) * inv_prod;
}

Decimal det_negH_rank2(const Params& p) {
  const NegHessianStructure s = neg_hessian_structure(p);
  return rank2_determinant(s.diag, s.v, s.w);
}

bool negH_cholesky_ok(const Params& p) {
  const Mat<Decimal> h = hessian_phi(p, bstar_decimal(p));
  const Mat<Decimal> neg = -h;
  Eigen::LLT<Mat<Decimal>> llt(neg);
  return llt.info() == Eigen::Success;
}

LaplaceReconstruction laplace_reconstruction(const Params& p) {
  const std::vector<Decimal> b = bstar_decimal(p);
  const Decimal phi_star = phi(p, b);
  const Decimal psi_star = psi(p, b);
  const Decimal det = det_negH_closed(p);
  const Decimal d = p.d, k = p.k;
  const Decimal log_c = log(c_value(p).value);
  LaplaceReconstruction out;
  out.constant_ratio = psi_star / (sqrt(Decimal(2)) * sqrt(det)) / (k * k / (2 * k - d));
  out.exponent_gap = phi_star - d / 2 * log(d) + d / k * log(to_decimal(binomial(p.d, p.k))) - d / k * log_c;
  return out;
}

std::vector<double> project_to_K(const Params& p, std::vector<double> b) {
  require_dimension(p, b);
  for (auto& x : b) x = std::max(x, 0.0);
  const double lo = double(p.d - p.k) / p.k;
  const double hi = double(p.d) / (2.0 * p.k);
  const double beta = beta_of(b);
  if (beta >= lo && beta <= hi) return b;
  std::vector<double> star;
  for (const auto& q : bstar(p).b) star.push_back(q.get_d());
  const double beta_star = beta_of(star);
  const double target = beta < lo ? lo : hi;
  const double t = (target - beta_star) / (beta - beta_star);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::max(0.0, star[i] + t * (b[i] - star[i]));
  return b;
}

namespace {

struct Ascent {
  const Params& p;
  const Consts<double>& c;

  bool inside(const Vec<double>& b) const { return interior(p, c, b).ok; }

  // Local ascent from an interior point: scaled gradient steps, Newton steps
  // once the Hessian is negative definite.
  Vec<double> run(Vec<double> b) const {
    double f = phi_with(p, c, b);
    for (int iter = 0; iter < 3000; ++iter) {
      const Vec<double> g = grad_with(p, c, b);
      const Mat<double> h = hessian_with(p, c, b);
      const auto m = static_cast<Eigen::Index>(b.size());
      Eigen::VectorXd dir(m);
      Eigen::LLT<Eigen::MatrixXd> llt(-h);
      Eigen::VectorXd gv(m);
      for (Eigen::Index i = 0; i < m; ++i) gv(i) = g[static_cast<std::size_t>(i)];
      bool newton = llt.info() == Eigen::Success;
      if (newton) {
        dir = llt.solve(gv);
      } else {
        for (Eigen::Index i = 0; i < m; ++i) dir(i) = b[static_cast<std::size_t>(i)] * gv(i);
      }
      const double slope = gv.dot(dir);
      if (!(slope > 0) || !std::isfinite(slope)) break;
      double t = 1.0;
      Vec<double> next(b.size());
      bool moved = false;
      for (int ls = 0; ls < 80; ++ls, t *= 0.5) {
        for (std::size_t i = 0; i < b.size(); ++i) next[i] = b[i] + t * dir(static_cast<Eigen::Index>(i));
        if (!inside(next)) continue;
        const double fn = phi_with(p, c, next);
        if (fn >= f + 1e-4 * t * slope || (newton && t == 1.0 && fn >= f - 1e-15)) {
          moved = true;
          f = fn;
          break;
        }
      }
      if (!moved) break;
      double step = 0;
      for (std::size_t i = 0; i < b.size(); ++i) step = std::max(step, std::abs(next[i] - b[i]));
      b = next;
      if (newton && step < 1e-15) break;
    }
    return b;
  }
};

void compositions(int parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(parts - 1, total - v, cur, out);
    cur.pop_back();
  }
}

// Nudges a point off the boundary so the ascent starts in the interior.
Vec<double> interiorize(const Params& p, Vec<double> b) {
  const double lo = double(p.d - p.k) / p.k;
  const double hi = double(p.d) / (2.0 * p.k);
  for (auto& x : b) x = std::max(x, 1e-9);
  const double beta = beta_of(b);
  const double target = std::clamp(beta, lo + 1e-9 * (hi - lo), hi - 1e-9 * (hi - lo));
  for (auto& x : b) x *= target / beta;
  return b;
}

}  // namespace

MaximizeResult maximize_phi(const Params& p, const MaximizeOptions& options) {
  require_above_half(p);
  if (options.starts < 1) throw std::invalid_argument("maximize_phi needs at least one start");
  const Consts<double> c = make_consts<double>(p);
  const std::size_t m = static_cast<std::size_t>(p.d - p.k + 1);
  const double lo = double(p.d - p.k) / p.k;
  const double hi = double(p.d) / (2.0 * p.k);

  MaximizeResult result;
  {
    const bool cond1 = p.d + 2 < 2 * p.k && p.k <= compute_ksscm(p.d);
    const bool cond2 = 2.0 * p.k <= p.d + 2.0 * std::max(1.0, std::log(double(p.d)) / 6.0);
    result.outside_proven_range = p.d < 5 || !(cond1 || cond2);
  }

  // Coarse grid over the slab; the best few points seed extra starts.
  std::vector<std::pair<double, Vec<double>>> grid;
  {
    int res = std::max(1, options.grid_resolution);
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    while (true) {
      comps.clear();
      compositions(static_cast<int>(m), res, cur, comps);
      if (comps.size() <= 20000 || res == 1) break;
      --res;
    }
    for (double frac : {0.0, 0.05, 0.25, 0.5, 0.75, 0.95, 1.0}) {
      const double beta = lo + frac * (hi - lo);
      for (const auto& comp : comps) {
        Vec<double> b(m);
        for (std::size_t i = 0; i < m; ++i) b[i] = beta * comp[i] / res;
        grid.emplace_back(phi_with(p, c, b), std::move(b));
      }
    }
    std::sort(grid.begin(), grid.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  }
  const int grid_starts = static_cast<int>(std::min<std::size_t>(grid.size(), 10));

  const int total = options.starts + grid_starts;
  result.starts.resize(static_cast<std::size_t>(total));
  const Ascent ascent{p, c};
  parallel_for(static_cast<std::size_t>(total), options.threads, [&](std::size_t s) {
    Vec<double> init(m);
    if (static_cast<int>(s) < options.starts) {
      Rng rng(derive_seed({options.seed, static_cast<std::uint64_t>(s)}));
      for (auto& x : init) x = rng.exponential();
      const double sum = beta_of(init);
      double beta = lo + rng.unit() * (hi - lo);
      switch (s % 4) {
        case 1:  // near the lower slab face
          beta = lo + 1e-6 * (hi - lo) * (1 + rng.unit());
          break;
        case 2:  // near the upper slab face
          beta = hi - 1e-6 * (hi - lo) * (1 + rng.unit());
          break;
        case 3:  // some coordinates near zero
          for (auto& x : init) {
            if (rng.unit() < 0.5) x = 1e-8 * sum;
          }
          break;
        default:
          break;
      }
      const double scale = beta / beta_of(init);
      for (auto& x : init) x *= scale;
      init = project_to_K(p, init);
    } else {
      init = grid[s - static_cast<std::size_t>(options.starts)].second;
    }
    Vec<double> fin = ascent.run(interiorize(p, init));
    auto& rec = result.starts[s];
    rec.start = static_cast<int>(s);
    rec.initial = std::move(init);
    rec.value = phi_with(p, c, fin);
    rec.final_point = std::move(fin);
  });

  const auto best = std::max_element(result.starts.begin(), result.starts.end(),
                                     [](const StartRecord& a, const StartRecord& b) { return a.value < b.value; });
  result.argmax = best->final_point;
  Vec<Decimal> arg;
  for (double x : result.argmax) arg.emplace_back(x);
  result.value = phi(p, arg);
  result.bstar_value = phi(p, bstar_decimal(p));
  for (const auto& [val, pt] : grid) {
    if (Decimal(val) > result.value) {
      Vec<Decimal> gp(pt.begin(), pt.end());
      const Decimal exact = phi(p, gp);
      if (exact > result.value) {
        result.value = exact;
        result.argmax = pt;
      }
    }
  }
  const auto star = bstar(p);
  double dist = 0;
  for (std::size_t i = 0; i < m; ++i) dist = std::max(dist, std::abs(result.argmax[i] - star.b[i].get_d()));
  result.distance_to_bstar = dist;
  result.matches_bstar = dist < 1e-6 && abs(result.value - result.bstar_value) < Decimal("1e-9");
  return result;
}

}  // namespace kstar
