#pragma once

// Code-parameter selection.
//
// Two regimes: per-bit fixed weights for independent source bits (closed
// first-order optimum), and the moment-series method for arbitrary weight
// histograms (isotropize, solve for the scale factor epsilon, pick one
// uniform weight).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sic/analysis.hpp"
#include "sic/codegen.hpp"
#include "sic/isotropic.hpp"
#include "sic/source_model.hpp"

namespace sic {

struct WeightPlan {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> weights;  // w_j per source bit
  double lambda_diag = 0;              // first-order multiplier estimate - 2
  double sum_odds = 0;                 // sum_k p_k / (1 - p_k)
  double max_p = 0;
  std::vector<std::string> warnings;
};

// Per-bit word weights minimizing signature variance at fixed mean, for
// independent bit probabilities p:
//   w_j = n / (1 - p_j) * ln 2 / sum_k p_k / (1 - p_k),
// rounded half-up and clamped to [1, n] (weight 0 for p_j = 0 bits, which
// carry no information and are excluded). The lambda diagnostic reports the
// first-order multiplier estimate lambda - 2 ~ 1/n - 2 ln2 / sum_odds.
inline WeightPlan optimal_weights_independent(std::span<const double> p,
                                              std::uint32_t n) {
  if (n < 2)
    throw std::invalid_argument("optimal weights: n must be >= 2");
  if (p.empty())
    throw std::invalid_argument("optimal weights: need at least one bit");
  WeightPlan plan;
  plan.n = n;

  double sum_odds = 0;
  double max_p = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!(p[j] >= 0.0))
      throw std::invalid_argument(
          "optimal weights: negative probability at index " +
          std::to_string(j));
    if (p[j] >= 1.0)
      throw std::invalid_argument(
          "optimal weights: p must be < 1 (index " + std::to_string(j) +
          "), the weight formula diverges");
    sum_odds += p[j] / (1.0 - p[j]);
    max_p = std::max(max_p, p[j]);
  }
  if (sum_odds <= 0.0)
    throw std::invalid_argument(
        "optimal weights: every bit has probability 0");

  plan.sum_odds = sum_odds;
  plan.max_p = max_p;
  plan.lambda_diag = 1.0 / double(n) - 2.0 * std::numbers::ln2 / sum_odds;
  if (max_p >= 0.5)
    plan.warnings.push_back(
        "max p = " + std::to_string(max_p) +
        " exceeds 1/2; a single shared code distribution is questionable");

  plan.weights.reserve(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] <= 0.0) {
      plan.weights.push_back(0);
      plan.warnings.push_back("bit " + std::to_string(j) +
                              " has probability 0: weight 0, excluded");
      continue;
    }
    const double raw =
        double(n) / (1.0 - p[j]) * std::numbers::ln2 / sum_odds;
    auto w = static_cast<std::int64_t>(std::floor(raw + 0.5));
    if (w < 1) {
      w = 1;
      plan.warnings.push_back("bit " + std::to_string(j) +
                              ": weight clamped up to 1");
    }
    if (w > n) {
      w = n;
      plan.warnings.push_back("bit " + std::to_string(j) +
                              ": weight clamped down to n");
    }
    // Domain bound for the per-bit factor u_j = 1 - p_j w_j / n: the
    // first-order solution assumes u_j >= 1 - (n-1) p_j / n, i.e.
    // w_j <= n - 1. Violations are reported, not fatal.
    if (w == n)
      plan.warnings.push_back(
          "bit " + std::to_string(j) +
          ": w = n leaves the u_j domain bound (factor saturated)");
    plan.weights.push_back(static_cast<std::uint32_t>(w));
  }
  return plan;
}

// F'_a factor product for independent bits with arbitrary per-bit word
// coefficients: F'_a = prod_j (p_j F_j(a) + 1 - p_j).
inline double independent_target_coeff(std::span<const double> p,
                                       std::span<const double> per_bit_f) {
  if (p.size() != per_bit_f.size())
    throw std::invalid_argument("independent target: size mismatch");
  double v = 1;
  for (std::size_t j = 0; j < p.size(); ++j)
    v *= p[j] * per_bit_f[j] + 1.0 - p[j];
  return v;
}

// Full F' vector for per-bit specs (all sharing n).
inline std::vector<double> independent_target_coeffs(
    std::span<const double> p, std::span<const CodeSpec> specs) {
  if (p.size() != specs.size())
    throw std::invalid_argument("independent target: size mismatch");
  if (specs.empty())
    throw std::invalid_argument("independent target: need at least one bit");
  const std::uint32_t n = specs[0].n;
  for (const auto& s : specs)
    if (s.n != n)
      throw std::invalid_argument("independent target: specs disagree on n");
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 1.0);
  for (std::uint32_t a = 0; a <= n; ++a) {
    double v = 1;
    for (std::size_t j = 0; j < specs.size(); ++j)
      v *= p[j] * specs[j].coeff_F(a) + 1.0 - p[j];
    out[a] = v;
  }
  return out;
}

inline IsotropicDistribution independent_target_distribution(
    std::span<const double> p, std::span<const CodeSpec> specs) {
  const auto f = independent_target_coeffs(p, specs);
  return IsotropicDistribution(specs[0].n, Basis::F, f);
}

// Isotropic stand-in for an arbitrary source: uniform within each weight
// class, p_m = hist(m) / C(N, m). Its generating function equals the
// histogram's exactly.
inline IsotropicDistribution isotropize(std::span<const double> weight_hist,
                                        std::uint32_t N) {
  if (weight_hist.size() != static_cast<std::size_t>(N) + 1)
    throw std::invalid_argument("isotropize: need N + 1 histogram entries");
  std::vector<double> p(weight_hist.size());
  for (std::uint32_t m = 0; m <= N; ++m)
    p[m] = static_cast<double>(quad(weight_hist[m]) / binomial_q(N, m));
  return IsotropicDistribution(N, Basis::P, p);
}

inline IsotropicDistribution isotropize(
    const std::map<std::uint32_t, double>& weight_hist, std::uint32_t N) {
  std::vector<double> h(static_cast<std::size_t>(N) + 1, 0.0);
  for (const auto& [w, mass] : weight_hist) {
    if (w > N)
      throw std::invalid_argument("isotropize: histogram weight exceeds N");
    h[w] = mass;
  }
  return isotropize(h, N);
}

// Three-term series for the scale epsilon with Pi(e^-eps) ~ 1 - target_g1,
// from the weight moments:
//   eps = G/mu1 + mu2 G^2 / (2 mu1^3) + (3 mu2^2 - mu1 mu3) G^3 / (6 mu1^5),
// where G = target_g1.
inline double solve_epsilon(const MomentSet& m, double target_g1 = 0.5) {
  if (!(m.mu1 > 0.0))
    throw std::invalid_argument("solve_epsilon: mu1 must be positive");
  if (!(target_g1 > 0.0 && target_g1 < 1.0))
    throw std::invalid_argument("solve_epsilon: target must be in (0, 1)");
  const double g = target_g1;
  const double m1 = m.mu1, m2 = m.mu2, m3 = m.mu3;
  return g / m1 + m2 * g * g / (2 * m1 * m1 * m1) +
         (3 * m2 * m2 - m1 * m3) * g * g * g /
             (6 * m1 * m1 * m1 * m1 * m1);
}

// Truncated forward series G1(eps) = mu1 eps - mu2 eps^2/2 + mu3 eps^3/6,
// the expansion solve_epsilon inverts; used to audit truncation error.
inline double g1_forward_series(const MomentSet& m, double eps) {
  return m.mu1 * eps - m.mu2 * eps * eps / 2 +
         m.mu3 * eps * eps * eps / 6;
}

struct GeneralDesignResult {
  CodeSpec spec;         // uniform fixed-weight spec
  DesignReport report;
  double eps_series = 0;  // series stage, before refinement
  double q_series = 0;
  double pi_series = 0;   // Pi(q_series) from the full histogram
  double q_final = 0;     // after bisection refinement (if engaged)
  double pi_final = 0;
  bool refined = false;
};

// One uniform fixed weight for an arbitrary weight histogram: q = e^-eps
// from the moment series, then w = round(n (1 - q)). Because the full
// histogram is available, Pi(q) is recomputed exactly and q is refined by
// bisection on Pi(q) = 1/2 whenever the series lands more than 0.01 away.
inline GeneralDesignResult general_design(std::span<const double> weight_hist,
                                          std::uint32_t N, std::uint32_t n) {
  if (n < 2)
    throw std::invalid_argument("general design: n must be >= 2");
  const auto model = SourceModel::empirical(N, weight_hist);
  const auto moments = model.weight_moments();
  if (!(moments.mu1 > 0.0))
    throw std::invalid_argument(
        "general design: degenerate histogram (no mass above weight 0)");
  if (!(model.gf(0.0) < 0.5))
    throw std::invalid_argument(
        "general design: weight-0 mass >= 1/2, Pi(q) = 1/2 is unreachable");

  GeneralDesignResult out{CodeSpec::fixed_weight(n, 1), DesignReport{}};
  out.eps_series = solve_epsilon(moments, 0.5);
  out.q_series = std::exp(-out.eps_series);
  out.pi_series = model.gf(out.q_series);

  out.q_final = out.q_series;
  out.pi_final = out.pi_series;
  if (std::abs(out.pi_series - 0.5) > 0.01) {
    out.refined = true;
    double lo = 0.0, hi = 1.0;  // Pi increasing: Pi(0) < 1/2 < Pi(1) = 1
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double pi = model.gf(mid);
      if (pi < 0.5)
        lo = mid;
      else
        hi = mid;
      out.q_final = mid;
      out.pi_final = pi;
      if (std::abs(pi - 0.5) <= 1e-9) break;
    }
  }

  const double raw_w = double(n) * (1.0 - out.q_final);
  auto w = static_cast<std::int64_t>(std::floor(raw_w + 0.5));
  w = std::clamp<std::int64_t>(w, 1, n);
  out.spec = CodeSpec::fixed_weight(n, static_cast<std::uint32_t>(w));

  DesignReport rep;
  rep.scheme = "fixed-weight";
  rep.n = n;
  rep.w = static_cast<std::uint32_t>(w);
  rep.q = out.q_final;
  const auto tm = target_moments(model, out.spec.distribution());
  rep.target_mean = tm.mu1;
  rep.target_variance = tm.variance;
  out.report = std::move(rep);
  return out;
}

}  // namespace sic
