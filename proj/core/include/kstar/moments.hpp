// First and second moments of the number Y of k-star orientations of a
// pairing, the independent-set first moment, and the short-cycle constants.
//
// Finite-n quantities are exact rationals; limits are Decimal.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kstar/numeric.hpp"

namespace kstar {

struct CycleParams {
  int j = 0;
  Rational lambda;  // (d-1)^j / (2j)
  Rational delta;   // ((d-2k+1)/(d-1))^j
  Rational limit_factor() const { return lambda * (1 + delta); }
};

// Poisson mean of the j-cycle count; d >= 2.
Rational cycle_lambda(int d, int j);
CycleParams cycle_params(int d, int k, int j);

struct SeriesValue {
  Decimal closed;                     // 1/2 log((d-1) / (4k-d-2-(2k-d)^2))
  std::vector<Decimal> partial_sums;  // partial_sums[J-1] = sum_{j<=J}
};
// Requires 2k > d and 4k-d-2 > (2k-d)^2, else std::domain_error
// "series condition fails".
SeriesValue sum_lambda_delta_sq(int d, int k, int terms = 0);

// sqrt((d-1) / (4k-d-2-(2k-d)^2)); std::domain_error when not positive.
Decimal variance_ratio_limit(int d, int k);

// 2k | dn, else std::domain_error.
void require_divisible(long n, int d, int k);

Rational exact_EY(long n, int d, int k);
Decimal asympt_EY(long n, int d, int k);

// Expected number of independent sets of size s in the pairing model.
Rational exact_EZ(long n, int d, long s);

// (d-1)(1-a)log(1-a) - a log a - (d/2)(1-2a)log(1-2a), with 0 log 0 = 0.
Decimal hd_alpha(int d, const Rational& alpha);

inline constexpr std::uint64_t kDefaultLatticeCap = 10'000'000;

// Number of lattice points in the second-moment summation domain.
BigInt ey2_domain_size(long n, int d, int k);
// Throws std::domain_error when the domain exceeds cap.
Rational exact_EY2(long n, int d, int k, std::uint64_t cap = kDefaultLatticeCap);

struct MomentReport {
  long n = 0;
  int d = 0;
  int k = 0;
  Rational exact_EY;
  Decimal asympt_EY;
  std::optional<Rational> exact_EY2;           // absent when over the cap
  std::optional<Decimal> variance_ratio_limit;  // absent when the series condition fails
  std::optional<Decimal> sum_lambda_delta_sq;
};
MomentReport moment_report(long n, int d, int k, std::uint64_t cap = kDefaultLatticeCap);

}  // namespace kstar
