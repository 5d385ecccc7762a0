// Exponential-rate landscape of the second-moment sum.
//
// Points b = (b_0, ..., b_{d-k}) live in
//     K = { b >= 0 : (d-k)/k <= beta(b) <= d/(2k) },
// beta(b) = sum b_i, gamma(b) = sum (k-i) b_i. phi uses 0 log 0 = 0 so it is
// defined on all of K; psi, the gradient and the Hessian need the interior.
// Evaluation is templated on the scalar: double for search, Decimal for checks.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/LU>
#include <boost/multiprecision/eigen.hpp>

#include "kstar/numeric.hpp"
#include "kstar/thresholds.hpp"

namespace kstar {

template <class T>
using Vec = std::vector<T>;
template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

// d! / ((k-i)! (d-k-i)! i!^2), 0 <= i <= d-k.
BigInt xcoef(int d, int k, int i);

struct BStar {
  std::vector<Rational> b;
  Rational beta;
  Rational gamma;
  Rational second;  // sum (k-i)^2 b_i
};
BStar bstar(const Params& p);
std::vector<Decimal> bstar_decimal(const Params& p);

template <class T>
T beta_of(const Vec<T>& b);
template <class T>
T gamma_of(const Params& p, const Vec<T>& b);

// Membership in K up to an absolute slack.
bool in_K(const Params& p, const Vec<double>& b, double slack = 0);

template <class T>
T phi(const Params& p, const Vec<T>& b);
// Interior only; throws std::domain_error("psi undefined") elsewhere.
template <class T>
T psi(const Params& p, const Vec<T>& b);
// Interior only; throws std::domain_error on the boundary.
template <class T>
Vec<T> grad_phi(const Params& p, const Vec<T>& b);
template <class T>
Mat<T> hessian_phi(const Params& p, const Vec<T>& b);

Decimal phi_bstar_closed(const Params& p);
Decimal psi_bstar_closed(const Params& p);
// phi at a = (d/(2k), 0, ..., 0).
Decimal phi_corner_closed(const Params& p);
std::vector<Decimal> corner_point(const Params& p);

// -H* = D + v v^T - w w^T.
struct NegHessianStructure {
  std::vector<Decimal> diag;
  std::vector<Decimal> v;
  std::vector<Decimal> w;
  Mat<Decimal> matrix() const;
};
NegHessianStructure neg_hessian_structure(const Params& p);

// det(D + v v^T - w w^T) for diagonal D, via two rank-one updates.
Decimal rank2_determinant(const std::vector<Decimal>& diag, const std::vector<Decimal>& v,
                          const std::vector<Decimal>& w);

// Requires 4k-d-2 > (2k-d)^2, else std::domain_error.
Decimal det_negH_closed(const Params& p);
Decimal det_negH_rank2(const Params& p);

// Cholesky of -H at b* from the analytic Hessian.
bool negH_cholesky_ok(const Params& p);

// Plugs phi(b*), psi(b*), det(-H*) into the Laplace asymptotic for the
// second moment and divides by the squared first-moment asymptotic.
struct LaplaceReconstruction {
  Decimal constant_ratio;  // should equal variance_ratio_limit
  Decimal exponent_gap;    // per-n exponential rate difference, should be 0
};
LaplaceReconstruction laplace_reconstruction(const Params& p);

struct MaximizeOptions {
  int starts = 200;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  int grid_resolution = 6;  // simplex grid points per axis for the coarse scan
};

struct StartRecord {
  int start = 0;
  std::vector<double> initial;
  std::vector<double> final_point;
  double value = 0;
};

struct MaximizeResult {
  std::vector<double> argmax;
  Decimal value;
  Decimal bstar_value;
  double distance_to_bstar = 0;  // max-norm
  bool matches_bstar = false;
  bool outside_proven_range = false;  // d < 5 or neither sufficient range condition holds
  std::vector<StartRecord> starts;
};

// Multistart projected ascent with Newton polish, plus a coarse grid scan.
// A falsification harness: it can only find counterexamples, not prove.
MaximizeResult maximize_phi(const Params& p, const MaximizeOptions& options = {});

// Clamps negatives to 0, then moves along the ray towards b* until beta is in range.
std::vector<double> project_to_K(const Params& p, std::vector<double> b);

}  // namespace kstar
