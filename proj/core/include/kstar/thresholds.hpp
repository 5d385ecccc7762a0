// Existence thresholds for k-star decompositions of random d-regular graphs.
//
// f is the hypergeometric PGF with parameters (d, k, k) and g(t) = t^k f(1/t).
// The second-moment stationary-point equation reduces to
//     (x + 1) f'(x) / k = (1 + eta(x)) f(x)
// and check_P1 decides exactly, by Sturm root isolation, whether x = 1 is its
// only solution on the certified interval. k_plus is the first-moment
// threshold for independent sets of size (2k - d) n / (2k).

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kstar/numeric.hpp"
#include "kstar/polyexact.hpp"

namespace kstar {

struct Params {
  int d = 0;
  int k = 0;
};

// Throws std::invalid_argument unless d >= 3 and d/2 < k < d.
void require_above_half(const Params& p);

RationalPolynomial build_f(const Params& p);
RationalPolynomial build_g(const Params& p);

// y(x) = (x + 1) f'(x) / k
RationalPolynomial build_y(const Params& p);

// Q(x) = (y - f)^2 - f + 2 (d - k) y / d. Its roots with y > f are exactly
// the solutions of the stationary-point equation. Q(1) = 0.
RationalPolynomial build_stationary_polynomial(const Params& p);

Decimal eta(const Params& p, const Decimal& x);
Decimal fhat(const Params& p, const Decimal& x);

bool check_P2(const Params& p);

// The open interval on which uniqueness of x = 1 is required. Needs P2.
RationalInterval p1_interval(const Params& p);

struct P1Detail {
  bool holds = false;
  int q_roots_in_interval = 0;  // distinct roots of Q on the interval
  int surviving_roots = 0;      // roots passing both branch constraints
  std::vector<RationalInterval> spurious;  // surviving roots other than 1
};

// Throws std::domain_error("P1 undefined without P2") when P2 fails.
P1Detail check_P1_detail(const Params& p);
bool check_P1(const Params& p);

// (eq k+) raised to the d-th power: lhs^d vs rhs^d as integers.
bool kplus_inequality(const Params& p);
int compute_kplus(int d);

// Largest K with every d/2 < k <= K passing P2 and P1 (scan stops at the
// first failure).
int compute_ksscm(int d);

struct CValue {
  Decimal value;
  bool gt_one = false;
};
CValue c_value(const Params& p);

struct ThresholdReport {
  int d = 0;
  int k = 0;  // the k the flags and c-value refer to
  bool p2_holds = false;
  bool p1_holds = false;
  int kplus = 0;
  int ksscm = 0;
  Decimal c_value;
  bool c_gt_one = false;
};
// Flags and c-value refer to k when given, otherwise to k = ksscm(d).
ThresholdReport threshold_report(int d, std::optional<int> k = std::nullopt);

struct FhatPoint {
  Decimal x;
  Decimal value;
};
std::vector<FhatPoint> plot_fhat(const Params& p, const std::vector<Decimal>& grid);
// `points` equally spaced interior points of the P1 interval, plus x = 1.
std::vector<Decimal> default_fhat_grid(const Params& p, int points = 400);
// Sign changes along a series; |value| < zero_tol counts as zero and is skipped.
int count_sign_changes(const std::vector<FhatPoint>& series, const Decimal& zero_tol);

struct ACheck {
  Decimal A;
  Decimal A1_closed;  // closed form of A'(1)
};
Decimal a_function(const Params& p, const Decimal& t);
ACheck check_A(const Params& p, const Decimal& t);

}  // namespace kstar
