#pragma once

// Screening analysis: the distribution of record signatures, false-drop
// probabilities, and the design formulas for choosing code parameters.
//
// Central fact: if every attribute's word is drawn independently from one
// isotropic distribution with coefficients F_a, a record signature is again
// isotropic with
//   F'_a = Pi(F_a),
// where Pi is the source weight generating function. Everything here is a
// consequence of that composition.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sic/combinatorics.hpp"
#include "sic/isotropic.hpp"
#include "sic/source_model.hpp"

namespace sic {

// F'_a of the signature distribution for one index a.
inline double target_coeff_F(const SourceModel& source,
                             const IsotropicDistribution& code,
                             std::uint32_t a) {
  return source.gf(code.to_basis(Basis::F).coeff(a));
}

// Full signature distribution (F basis), F'_a = Pi(F_a).
inline IsotropicDistribution target_distribution(
    const SourceModel& source, const IsotropicDistribution& code) {
  const auto f = code.to_basis(Basis::F).coeffs();
  std::vector<double> out(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) out[a] = source.gf(f[a]);
  return IsotropicDistribution(code.n(), Basis::F, out);
}

namespace detail {

// Moments from the top three F coefficients via G_k = sum (-1)^j C(k,j)
// F_{n-j}; cancellation here is mild (k <= 3) but the products n^3 G_3
// deserve quad headroom.
inline MomentSet moments_from_top_f(std::uint32_t n, double f1, double f2,
                                    double f3) {
  const quad nq = quad(n);
  const quad g1 = quad(1) - quad(f1);
  const quad g2 = n >= 2 ? quad(1) - 2 * quad(f1) + quad(f2) : quad(0);
  const quad g3 = n >= 3
                      ? quad(1) - 3 * quad(f1) + 3 * quad(f2) - quad(f3)
                      : quad(0);
  const quad m1 = nq * g1;
  const quad m2 = nq * (nq - 1) * g2 + m1;
  const quad m3 = nq * (nq - 1) * (nq - 2) * g3 + 3 * nq * (nq - 1) * g2 + m1;
  MomentSet out;
  out.mu1 = static_cast<double>(m1);
  out.mu2 = static_cast<double>(m2);
  out.mu3 = static_cast<double>(m3);
  out.variance = static_cast<double>(m2 - m1 * m1);
  return out;
}

}  // namespace detail

// Signature weight moments, using only F'_{n-1}, F'_{n-2}, F'_{n-3}; stays
// stable at any n (no basis conversion of the full vector).
inline MomentSet target_moments(const SourceModel& source,
                                const IsotropicDistribution& code) {
  const std::uint32_t n = code.n();
  const auto f = code.to_basis(Basis::F);
  const double f1 = source.gf(f.coeff(n - 1));
  const double f2 = n >= 2 ? source.gf(f.coeff(n - 2)) : 1.0;
  const double f3 = n >= 3 ? source.gf(f.coeff(n - 3)) : 1.0;
  return detail::moments_from_top_f(n, f1, f2, f3);
}

// P(record signature covers a fixed pattern of weight a | signature weight
// k) = C(n-a, k-a) / C(n, k), in log space for large n.
inline double cover_probability_given_weights(std::uint32_t n, std::uint32_t k,
                                              std::uint32_t a) {
  if (a > k) return 0.0;
  if (k > n) throw std::invalid_argument("cover probability: k must be <= n");
  if (n <= detail::kExactBinomialBits)
    return static_cast<double>(binomial_q(n - a, k - a) / binomial_q(n, k));
  return std::exp(ln_binomial(n - a, k - a) - ln_binomial(n, k));
}

// --- binomial (independent-bit) codes -------------------------------------

// ln theta for uniform binomial codes, record weight r, query weight s:
//   theta = [(1 - q^r)(1 - q^s) + q^s]^n = [1 - q^r (1 - q^s)]^n.
inline double ln_false_drop_binomial(std::uint32_t n, std::uint32_t r,
                                     std::uint32_t s, double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("false drop: q must be in [0, 1]");
  if (r == 0)
    throw std::invalid_argument("false drop: record weight r must be >= 1");
  const double qr = std::pow(q, double(r));
  const double qs = std::pow(q, double(s));
  return double(n) * std::log1p(-qr * (1.0 - qs));
}

inline double false_drop_binomial(std::uint32_t n, std::uint32_t r,
                                  std::uint32_t s, double q) {
  return std::exp(ln_false_drop_binomial(n, r, s, q));
}

// Minimizer of theta over q: q* = (r / (r + s))^(1/s).
inline double optimal_q_binomial(std::uint32_t r, std::uint32_t s) {
  if (r == 0 || s == 0)
    throw std::invalid_argument("optimal q: r and s must be >= 1");
  return std::pow(double(r) / double(r + s), 1.0 / double(s));
}

// Asymptotic code length for theta <= theta_max at the worst (smallest)
// query weight: n ~ (r e / s_min) ln(1 / theta_max).
inline std::uint32_t required_length(std::uint32_t r, std::uint32_t s_min,
                                     double theta_max) {
  if (r == 0 || s_min == 0)
    throw std::invalid_argument("required length: r and s_min must be >= 1");
  if (!(theta_max > 0.0 && theta_max < 1.0))
    throw std::invalid_argument("required length: theta_max must be in (0, 1)");
  const double n = double(r) * std::exp(1.0) / double(s_min) *
                   (-std::log(theta_max));
  return static_cast<std::uint32_t>(std::ceil(n));
}

// Smallest n >= the asymptotic estimate whose exact theta (at the optimal
// q for s_min) meets theta_max.
inline std::uint32_t required_length_exact(std::uint32_t r,
                                           std::uint32_t s_min,
                                           double theta_max) {
  std::uint32_t n = std::max<std::uint32_t>(1, required_length(r, s_min,
                                                               theta_max));
  const double q = optimal_q_binomial(r, s_min);
  const double ln_max = std::log(theta_max);
  while (ln_false_drop_binomial(n, r, s_min, q) > ln_max) {
    if (n >= (1u << 26))
      throw std::runtime_error("required length: no feasible n found");
    ++n;
  }
  return n;
}

// --- fixed-weight codes ----------------------------------------------------

// ln theta approximation for uniform weight-w words (q = 1 - w/n):
//   theta ~ (1 - q^r)^(n (1 - q^s)).
// The record signature is treated as an effective binomial pattern; good
// for w << n and r well below n/w.
inline double ln_false_drop_fixed_weight(std::uint32_t n, std::uint32_t r,
                                         std::uint32_t s, std::uint32_t w) {
  if (r == 0)
    throw std::invalid_argument("false drop: record weight r must be >= 1");
  if (w > n) throw std::invalid_argument("false drop: w must be <= n");
  if (w == 0) {
    return s == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  const double q = 1.0 - double(w) / double(n);
  const double qr = std::pow(q, double(r));
  const double qs = std::pow(q, double(s));
  return double(n) * (1.0 - qs) * std::log1p(-qr);
}

inline double false_drop_fixed_weight(std::uint32_t n, std::uint32_t r,
                                      std::uint32_t s, std::uint32_t w) {
  return std::exp(ln_false_drop_fixed_weight(n, r, s, w));
}

// Signature weight variance approximation for fixed-weight words,
//   var ~ n q^r (1 - q^r) [1 - r (1-q) q^(r-1) / (1 - q^r)],
// against which the exact value (target_moments) is typically within a few
// percent for w << n.
inline double fixed_weight_variance_approx(std::uint32_t n, std::uint32_t r,
                                           std::uint32_t w) {
  if (w == 0 || w > n)
    throw std::invalid_argument("variance approx: need 1 <= w <= n");
  const double q = 1.0 - double(w) / double(n);
  const double qr = std::pow(q, double(r));
  if (qr >= 1.0) return 0.0;
  const double bracket =
      1.0 - double(r) * (1.0 - q) * std::pow(q, double(r) - 1.0) / (1.0 - qr);
  return double(n) * qr * (1.0 - qr) * bracket;
}

// --- screening estimates ----------------------------------------------------

// Expected candidate count when a query signature of weight a is screened
// against db_size records with the given signature distribution. Uses a
// basis conversion, hence the n <= 64 exactness domain.
inline double expected_candidates(const IsotropicDistribution& target,
                                  std::uint32_t query_weight,
                                  std::uint64_t db_size) {
  if (query_weight > target.n())
    throw std::invalid_argument("expected candidates: weight exceeds n");
  return double(db_size) * target.to_basis(Basis::G).coeff(query_weight);
}

// Same from an observed signature weight histogram (masses by weight,
// entries 0..n); stable at any n.
inline double expected_candidates(std::uint32_t n,
                                  std::span<const double> weight_masses,
                                  std::uint32_t query_weight,
                                  std::uint64_t db_size) {
  if (weight_masses.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("expected candidates: need n + 1 masses");
  if (query_weight > n)
    throw std::invalid_argument("expected candidates: weight exceeds n");
  CompensatedSum<double> acc;
  for (std::uint32_t k = query_weight; k <= n; ++k)
    acc.add(weight_masses[k] *
            cover_probability_given_weights(n, k, query_weight));
  return double(db_size) * acc.value();
}

// Exact false-drop probability between two arbitrary signature
// distributions on the same n: theta = sum_m C(n,m) p~_m G_m (query weight
// masses against record cover coefficients). Basis conversions limit this
// to n <= 64.
inline double false_drop_general(const IsotropicDistribution& record_target,
                                 const IsotropicDistribution& query_target) {
  if (record_target.n() != query_target.n())
    throw std::invalid_argument("false_drop_general: n mismatch");
  if (record_target.n() > detail::kExactBinomialBits)
    throw std::invalid_argument(
        "false_drop_general: conversions are exact only for n <= 64; use the "
        "closed-form or simulation paths for longer codes");
  const auto masses = query_target.weight_distribution();
  const auto g = record_target.to_basis(Basis::G).coeffs();
  CompensatedSum<double> acc;
  for (std::size_t m = 0; m < masses.size(); ++m) acc.add(masses[m] * g[m]);
  return acc.value();
}

// --- design reports ----------------------------------------------------------

// Bundle of designed parameters and predicted operating figures; optional
// fields are filled according to the scheme.
struct DesignReport {
  std::string scheme;  // "binomial" or "fixed-weight"
  std::uint32_t n = 0;
  std::optional<std::uint32_t> r;  // record source weight
  std::optional<std::uint32_t> s;  // query source weight
  std::optional<double> q;
  std::optional<std::uint32_t> w;
  std::optional<double> ln_theta;
  std::optional<double> theta;     // exp(ln_theta); underflows to 0 harmlessly
  bool theta_is_approximation = false;
  double target_mean = 0;          // record signature weight statistics
  double target_variance = 0;
  std::optional<std::uint32_t> required_n;  // required-length mode: estimate
  std::optional<std::uint32_t> adjusted_n;  // and exact-checked value
};

inline DesignReport report_binomial(std::uint32_t n, std::uint32_t r,
                                    std::uint32_t s, double q) {
  DesignReport rep;
  rep.scheme = "binomial";
  rep.n = n;
  rep.r = r;
  rep.s = s;
  rep.q = q;
  rep.ln_theta = ln_false_drop_binomial(n, r, s, q);
  rep.theta = std::exp(*rep.ln_theta);
  const auto m = target_moments(SourceModel::fixed_weight(std::max(r, 1u), r),
                                IsotropicDistribution::from_binomial(n, q));
  rep.target_mean = m.mu1;
  rep.target_variance = m.variance;
  return rep;
}

inline DesignReport report_fixed_weight(std::uint32_t n, std::uint32_t r,
                                        std::uint32_t s, std::uint32_t w) {
  DesignReport rep;
  rep.scheme = "fixed-weight";
  rep.n = n;
  rep.r = r;
  rep.s = s;
  rep.w = w;
  rep.ln_theta = ln_false_drop_fixed_weight(n, r, s, w);
  rep.theta = std::exp(*rep.ln_theta);
  rep.theta_is_approximation = true;
  const auto m = target_moments(SourceModel::fixed_weight(std::max(r, 1u), r),
                                IsotropicDistribution::from_fixed_weight(n, w));
  rep.target_mean = m.mu1;
  rep.target_variance = m.variance;
  return rep;
}

inline DesignReport report_required_length(std::uint32_t r,
                                           std::uint32_t s_min,
                                           double theta_max) {
  const auto n_est = required_length(r, s_min, theta_max);
  const auto n_adj = required_length_exact(r, s_min, theta_max);
  DesignReport rep = report_binomial(n_adj, r, s_min,
                                     optimal_q_binomial(r, s_min));
  rep.required_n = n_est;
  rep.adjusted_n = n_adj;
  return rep;
}

}  // namespace sic
