#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace heapgame::density {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Largest DP table (entries) any call will allocate.
inline constexpr std::size_t kMaxDpEntries = 50'000'000;

// Partitions of `total` into exactly `parts` positive parts, each <= max_part.
BigCount count_partitions(std::uint64_t total, std::size_t parts, std::uint64_t max_part);

// |P_n| for n = 0..N, via the shift x_i = m_i - (T_n - 1): partitions of
// n+k-1 into k-1 parts each <= n+1.
BigCount pi_exact(std::uint64_t N, std::size_t k);

// Canonical k-tuples (nondecreasing, entries >= 0) with total <= kT_N + N.
BigCount nu_exact(std::uint64_t N, std::size_t k);

// Closed-form estimates, evaluated exactly as rationals:
//   ((N+k-1)^{k-1} - (k-2)^{k-1}) / (k-1)!   <= pi <= ((N+k)^{k-1} - (k-1)^{k-1}) / (k-1)!
//   ((S+k)^k - (k-1)^k) / k!                  <= nu <= ((S+k+1)^k - k^k) / k!
// with S = kT_N + N.
struct Bounds {
  Rational pi_lower, pi_upper, nu_lower, nu_upper;
};
Bounds closed_form_bounds(std::uint64_t N, std::size_t k);

// sum_{n=0}^{N} (n+k-1)^{k-2} / (k-2)!, the estimator the pi bounds integrate.
Rational pi_estimate(std::uint64_t N, std::size_t k);

struct DensityReport {
  std::size_t k = 0;
  std::uint64_t N = 0;
  BigCount pi_exact;
  BigCount nu_exact;
  Bounds bounds;
  double ratio = 0.0;  // pi_exact / nu_exact
};

DensityReport density_report(std::uint64_t N, std::size_t k);

// Reports for N = 1..N_max, sharing one partition table.
std::vector<DensityReport> ratio_scan(std::size_t k, std::uint64_t N_max);

// Least-squares slope of log(ratio) against log(N) over reports with
// N in [N_lo, N_hi].
double loglog_slope(std::span<const DensityReport> reports, std::uint64_t N_lo,
                    std::uint64_t N_hi);

// Exact decimal rounded half up to `places` digits.
std::string to_decimal(const Rational& r, int places = 6);

// Header N,pi_exact,nu_exact,pi_lower,pi_upper,nu_lower,nu_upper,ratio. Bounds
// are printed as exact decimals to six places.
void write_csv(std::ostream& os, std::span<const DensityReport> reports);

}  // namespace heapgame::density
