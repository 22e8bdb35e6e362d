// Walks through sizing a signature scheme two ways: a uniform binomial code
// picked from closed forms, and per-bit weights tuned to skewed frequencies.

#include <cstdio>

#include "sic/analysis.hpp"
#include "sic/optimizer.hpp"

int main() {
  // Records carry 100 descriptors, queries at least 3; one false drop per
  // hundred screened records is acceptable.
  const std::uint32_t r = 100, s_min = 3;
  const double theta_max = 0.01;

  const auto sized = sic::report_required_length(r, s_min, theta_max);
  std::printf("asymptotic length  %u\n", *sized.required_n);
  std::printf("adjusted length    %u\n", *sized.adjusted_n);
  std::printf("optimal q          %.6f\n", *sized.q);
  std::printf("ln theta           %.4f (theta %.3e)\n\n", *sized.ln_theta,
              *sized.theta);

  // Same capacity, but the source bits are far from uniform: a few hot
  // descriptors and a long cold tail.
  std::vector<double> p(200);
  for (std::size_t j = 0; j < p.size(); ++j)
    p[j] = j < 8 ? 0.20 : (j < 40 ? 0.02 : 0.002);

  const auto plan = sic::optimal_weights_independent(p, *sized.adjusted_n);
  std::printf("skewed-source plan over n = %u\n", plan.n);
  std::printf("  hot bit weight   %u\n", plan.weights.front());
  std::printf("  cold bit weight  %u\n", plan.weights.back());
  std::printf("  lambda - 2       %.6f\n", plan.lambda_diag);

  std::vector<double> per_bit_top(p.size());
  for (std::size_t j = 0; j < p.size(); ++j)
    per_bit_top[j] =
        sic::CodeSpec::fixed_weight(plan.n, plan.weights[j]).coeff_F(plan.n - 1);
  const double top = sic::independent_target_coeff(p, per_bit_top);
  std::printf("  F'(n-1)          %.6f (0.5 is the design point)\n", top);
  return 0;
}
