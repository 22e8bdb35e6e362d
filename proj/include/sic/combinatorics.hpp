#pragma once

// Binomial coefficients and compensated summation.
//
// The p/F/G coefficient conversions are alternating sums with binomial
// weights up to C(n, n/2); double precision loses them to cancellation
// around n = 24.  All conversion arithmetic therefore runs in binary128
// ("quad"), with exact integer coefficients for n <= 64 and a Pascal
// triangle carried in quad beyond that (exact below 2^113).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sic {

// 113-bit mantissa scalar used by the distribution algebra. Public results
// are narrowed to double at the API boundary.
using quad = __float128;

namespace detail {

inline constexpr int kExactBinomialBits = 64;

// Pascal triangle in uint64, n <= 64. C(64,32) = 1832624140942590534 < 2^63.
inline const std::vector<std::vector<std::uint64_t>>& binomial_table_u64() {
  static const auto table = [] {
    std::vector<std::vector<std::uint64_t>> t(kExactBinomialBits + 1);
    for (int n = 0; n <= kExactBinomialBits; ++n) {
      t[n].assign(static_cast<std::size_t>(n) + 1, 1);
      for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
  }();
  return table;
}

}  // namespace detail

// Exact binomial coefficient; requires 0 <= n <= 64.
inline std::uint64_t binomial_u64(std::uint32_t n, std::uint32_t k) {
  if (n > detail::kExactBinomialBits)
    throw std::invalid_argument("binomial_u64: n exceeds exact 64-bit range");
  if (k > n) return 0;
  return detail::binomial_table_u64()[n][k];
}

// Rows 0..n of the Pascal triangle in quad. Exact for n <= 64 (copied from
// the integer table); beyond that the additive recurrence keeps ~1e-34
// relative accuracy. Intended for one-shot use inside a conversion.
inline std::vector<std::vector<quad>> binomial_rows(std::uint32_t n) {
  std::vector<std::vector<quad>> rows(static_cast<std::size_t>(n) + 1);
  const auto& exact = detail::binomial_table_u64();
  const std::uint32_t n_exact =
      std::min<std::uint32_t>(n, detail::kExactBinomialBits);
  for (std::uint32_t m = 0; m <= n_exact; ++m) {
    rows[m].resize(m + 1);
    for (std::uint32_t k = 0; k <= m; ++k) rows[m][k] = quad(exact[m][k]);
  }
  for (std::uint32_t m = n_exact + 1; m <= n; ++m) {
    rows[m].assign(static_cast<std::size_t>(m) + 1, quad(1));
    for (std::uint32_t k = 1; k < m; ++k)
      rows[m][k] = rows[m - 1][k - 1] + rows[m - 1][k];
  }
  return rows;
}

// Binomial coefficient as quad without building a triangle: exact table for
// n <= 64, multiplicative product beyond (relative error ~ k * 1e-34).
inline quad binomial_q(std::uint32_t n, std::uint32_t k) {
  if (k > n) return quad(0);
  if (n <= detail::kExactBinomialBits)
    return quad(detail::binomial_table_u64()[n][k]);
  if (k > n - k) k = n - k;
  quad c = 1;
  for (std::uint32_t i = 1; i <= k; ++i)
    c = c * quad(n - k + i) / quad(i);
  return c;
}

// ln C(n, k) via lgamma; |k > n| maps to -inf. Used for log-space work where
// magnitudes leave double range (e.g. C(1024, 512) ~ 1e306).
inline double ln_binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) -
         std::lgamma(double(n - k) + 1);
}

// Neumaier-compensated accumulator. The conversions sum terms of wildly
// mixed magnitude and sign; compensation keeps the running error at one
// ulp of the final value instead of one ulp of the largest intermediate.
template <typename T>
class CompensatedSum {
 public:
  void add(T v) {
    T t = sum_ + v;
    if (fabsq_(sum_) >= fabsq_(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  static T fabsq_(T v) { return v < T(0) ? -v : v; }
  T sum_{0};
  T comp_{0};
};

}  // namespace sic
