#include "heapgame/density.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "heapgame/core.hpp"

namespace heapgame::density {

namespace {

void check_k(std::size_t k) {
  if (k < kMinHeaps || k > kDefaultMaxHeaps)
    throw DomainError("density needs 3 <= k <= 64, got " + std::to_string(k));
}

void check_dp(std::uint64_t rows, std::uint64_t cols) {
  if (cols != 0 && rows > kMaxDpEntries / cols)
    throw ResourceLimitError("partition table of " + std::to_string(rows) + " x " +
                             std::to_string(cols) + " exceeds the cap");
}

BigCount factorial(std::size_t n) {
  BigCount f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

BigCount power(BigCount base, std::size_t e) { return boost::multiprecision::pow(base, static_cast<unsigned>(e)); }

// kT_N + N.
std::uint64_t position_total(std::uint64_t N, std::size_t k) {
  return checked_add(checked_mul(k, triangular(N), "kT_N"), N, "kT_N + N");
}

// partitions of s into at most k parts, s = 0..max_total.
std::vector<BigCount> at_most_k_parts(std::uint64_t max_total, std::size_t k) {
  check_dp(max_total + 1, 1);
  // Conjugation: at most k parts <=> parts of size at most k.
  std::vector<BigCount> ways(static_cast<std::size_t>(max_total) + 1, 0);
  ways[0] = 1;
  for (std::size_t part = 1; part <= k; ++part)
    for (std::size_t s = part; s <= max_total; ++s) ways[s] += ways[s - part];
  return ways;
}

}  // namespace

BigCount count_partitions(std::uint64_t total, std::size_t parts, std::uint64_t max_part) {
  if (parts == 0) return total == 0 ? 1 : 0;
  if (total < parts || max_part == 0) return 0;
  check_dp(parts + 1, total + 1);
  // ways[c][s]: multisets of c parts, values seen so far, summing to s.
  const std::size_t cols = static_cast<std::size_t>(total) + 1;
  std::vector<BigCount> ways((parts + 1) * cols, 0);
  ways[0] = 1;
  const std::uint64_t top = std::min(max_part, total);
  for (std::uint64_t v = 1; v <= top; ++v)
    for (std::size_t c = 1; c <= parts; ++c)
      for (std::uint64_t s = v; s <= total; ++s)
        ways[c * cols + s] += ways[(c - 1) * cols + s - v];
  return ways[parts * cols + total];
}

BigCount pi_exact(std::uint64_t N, std::size_t k) {
  check_k(k);
  position_total(N, k);
  BigCount sum = 0;
  for (std::uint64_t n = 0; n <= N; ++n) sum += count_partitions(n + k - 1, k - 1, n + 1);
  return sum;
}

BigCount nu_exact(std::uint64_t N, std::size_t k) {
  check_k(k);
  BigCount sum = 0;
  for (const BigCount& w : at_most_k_parts(position_total(N, k), k)) sum += w;
  return sum;
}

Bounds closed_form_bounds(std::uint64_t N, std::size_t k) {
  check_k(k);
  const BigCount f1 = factorial(k - 1);
  const BigCount fk = factorial(k);
  const BigCount s = position_total(N, k);
  const BigCount n = N;
  const BigCount kk = k;
  Bounds b;
  b.pi_lower = Rational(power(n + kk - 1, k - 1) - power(kk - 2, k - 1), f1);
  b.pi_upper = Rational(power(n + kk, k - 1) - power(kk - 1, k - 1), f1);
  b.nu_lower = Rational(power(s + kk, k) - power(kk - 1, k), fk);
  b.nu_upper = Rational(power(s + kk + 1, k) - power(kk, k), fk);
  return b;
}

Rational pi_estimate(std::uint64_t N, std::size_t k) {
  check_k(k);
  BigCount sum = 0;
  for (std::uint64_t n = 0; n <= N; ++n) sum += power(BigCount(n + k - 1), k - 2);
  return Rational(sum, factorial(k - 2));
}

namespace {

double to_ratio(const BigCount& num, const BigCount& den) {
  return Rational(num, den).convert_to<double>();
}

}  // namespace

DensityReport density_report(std::uint64_t N, std::size_t k) {
  DensityReport r;
  r.k = k;
  r.N = N;
  r.pi_exact = pi_exact(N, k);
  r.nu_exact = nu_exact(N, k);
  r.bounds = closed_form_bounds(N, k);
  r.ratio = to_ratio(r.pi_exact, r.nu_exact);
  return r;
}

std::vector<DensityReport> ratio_scan(std::size_t k, std::uint64_t N_max) {
  check_k(k);
  const std::vector<BigCount> ways = at_most_k_parts(position_total(N_max, k), k);
  std::vector<DensityReport> out;
  BigCount pi = count_partitions(k - 1, k - 1, 1);  // P_0
  BigCount nu = 0;
  std::uint64_t counted = 0;  // totals [0, counted) already in nu
  for (std::uint64_t N = 1; N <= N_max; ++N) {
    pi += count_partitions(N + k - 1, k - 1, N + 1);
    const std::uint64_t top = position_total(N, k);
    for (; counted <= top; ++counted) nu += ways[counted];
    DensityReport r;
    r.k = k;
    r.N = N;
    r.pi_exact = pi;
    r.nu_exact = nu;
    r.bounds = closed_form_bounds(N, k);
    r.ratio = to_ratio(pi, nu);
    out.push_back(std::move(r));
  }
  return out;
}

double loglog_slope(std::span<const DensityReport> reports, std::uint64_t N_lo,
                    std::uint64_t N_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (const auto& r : reports) {
    if (r.N < N_lo || r.N > N_hi || r.N == 0) continue;
    const double x = std::log(static_cast<double>(r.N));
    const double y = std::log(r.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw DomainError("slope fit needs at least two points in range");
  const double c = static_cast<double>(count);
  return (c * sxy - sx * sy) / (c * sxx - sx * sx);
}

std::string to_decimal(const Rational& r, int places) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigCount scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const BigCount den = denominator(r);
  BigCount num = numerator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  const BigCount scaled = (num * scale * 2 + den) / (den * 2);
  std::string out = (negative ? "-" : "") + BigCount(scaled / scale).str();
  if (places > 0) {
    std::string frac = BigCount(scaled % scale).str();
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    out += "." + frac;
  }
  return out;
}

void write_csv(std::ostream& os, std::span<const DensityReport> reports) {
  os << "N,pi_exact,nu_exact,pi_lower,pi_upper,nu_lower,nu_upper,ratio\n";
  char ratio[32];
  for (const auto& r : reports) {
    std::snprintf(ratio, sizeof ratio, "%.12e", r.ratio);
    os << r.N << ',' << r.pi_exact << ',' << r.nu_exact << ',' << to_decimal(r.bounds.pi_lower)
       << ',' << to_decimal(r.bounds.pi_upper) << ',' << to_decimal(r.bounds.nu_lower) << ','
       << to_decimal(r.bounds.nu_upper) << ',' << ratio << '\n';
  }
}

}  // namespace heapgame::density
