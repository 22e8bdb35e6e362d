#pragma once

// Isotropic distributions over n-bit patterns.
//
// A distribution is isotropic when the probability of a pattern depends
// only on its weight. Three equivalent coefficient families describe one:
//
//   p_k : probability of one specific pattern of weight k
//         (so the weight-k mass is C(n,k) p_k),
//   F_a : probability the random pattern is covered by a fixed pattern of
//         weight a (equivalently lands inside a chosen a-subset),
//   G_a : probability the random pattern covers a fixed pattern of weight a.
//
// Conversions between the families are alternating binomial sums; they are
// carried in binary128 with compensated accumulation, which holds roundtrip
// error near 1e-25 for n <= 64. Beyond n = 64 conversions still run but the
// cancellation (C(n, n/2) ~ 10^(0.3 n)) gradually consumes even the 113-bit
// mantissa; direct constructions (from_binomial, from_fixed_weight) stay
// accurate at any n.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sic/combinatorics.hpp"

namespace sic {

enum class Basis { P, F, G };

inline const char* basis_name(Basis b) {
  switch (b) {
    case Basis::P: return "p";
    case Basis::F: return "F";
    case Basis::G: return "G";
  }
  return "?";
}

// First three raw moments of the pattern weight, plus the variance.
struct MomentSet {
  double mu1 = 0;
  double mu2 = 0;
  double mu3 = 0;
  double variance = 0;
};

class IsotropicDistribution {
 public:
  static constexpr double kDefaultTolerance = 1e-9;
  static constexpr std::uint32_t kMaxLength = 1u << 20;

  // Coefficients indexed 0..n in the given basis. Validates the basis
  // invariants to the given tolerance (empirical data may need a looser
  // one); throws std::invalid_argument on violation.
  IsotropicDistribution(std::uint32_t n, Basis basis,
                        std::span<const double> coeffs,
                        double tolerance = kDefaultTolerance)
      : n_(check_n(n)), basis_(basis), coeffs_(coeffs.begin(), coeffs.end()) {
    if (coeffs.size() != static_cast<std::size_t>(n) + 1)
      throw std::invalid_argument(
          "IsotropicDistribution: need n + 1 coefficients");
    validate(tolerance);
  }

  // Independent bits, each set with probability 1 - q: F_a = q^(n-a).
  static IsotropicDistribution from_binomial(std::uint32_t n, double q) {
    check_n(n);
    if (!(q >= 0.0 && q <= 1.0))
      throw std::invalid_argument("from_binomial: q must be in [0, 1]");
    std::vector<quad> f(static_cast<std::size_t>(n) + 1);
    const quad qq = quad(q);
    quad pw = 1;  // q^(n-a) built from a = n downward
    for (std::uint32_t a = n + 1; a-- > 0;) {
      f[a] = pw;
      pw *= qq;
    }
    return IsotropicDistribution(n, Basis::F, std::move(f), Unchecked{});
  }

  // Uniform over all patterns of weight exactly w:
  // F_a = C(n-w, n-a) / C(n, a) for a >= w, else 0.
  static IsotropicDistribution from_fixed_weight(std::uint32_t n,
                                                 std::uint32_t w) {
    check_n(n);
    if (w > n)
      throw std::invalid_argument("from_fixed_weight: w must be <= n");
    const auto rows = binomial_rows(n);
    std::vector<quad> f(static_cast<std::size_t>(n) + 1, quad(0));
    for (std::uint32_t a = w; a <= n; ++a)
      f[a] = rows[n - w][n - a] / rows[n][a];
    return IsotropicDistribution(n, Basis::F, std::move(f), Unchecked{});
  }

  std::uint32_t n() const noexcept { return n_; }
  Basis basis() const noexcept { return basis_; }

  double coeff(std::uint32_t k) const {
    if (k > n_) throw std::out_of_range("coeff: index exceeds n");
    return static_cast<double>(coeffs_[k]);
  }

  std::vector<double> coeffs() const {
    return std::vector<double>(coeffs_.begin(), coeffs_.end());
  }

  // Probability mass of weight k, C(n,k) p_k. For n > 64 the per-pattern
  // p_k may underflow double while the mass itself is representable, so
  // the product is formed in quad first.
  std::vector<double> weight_distribution() const {
    const auto p = converted(Basis::P);
    std::vector<double> mass(p.size());
    for (std::uint32_t k = 0; k <= n_; ++k)
      mass[k] = static_cast<double>(binomial_q(n_, k) * p[k]);
    return mass;
  }

  IsotropicDistribution to_basis(Basis target) const {
    if (target == basis_) return *this;
    return IsotropicDistribution(n_, target, converted(target), Unchecked{});
  }

  // Weight enumerator f(t) = sum_k C(n,k) p_k t^k.
  double gf_f(double t) const {
    const auto p = converted(Basis::P);
    CompensatedSum<quad> acc;
    quad tp = 1;
    for (std::uint32_t k = 0; k <= n_; ++k) {
      acc.add(binomial_q(n_, k) * p[k] * tp);
      tp *= quad(t);
    }
    return static_cast<double>(acc.value());
  }

  // F(t) = sum_m C(n,m) F_m t^m = (1+t)^n f(t / (1+t)).
  double gf_F(double t) const {
    const auto f = converted(Basis::F);
    CompensatedSum<quad> acc;
    quad tp = 1;
    for (std::uint32_t m = 0; m <= n_; ++m) {
      acc.add(binomial_q(n_, m) * f[m] * tp);
      tp *= quad(t);
    }
    return static_cast<double>(acc.value());
  }

  // G(t) = sum_k C(n,k) G_{n-k} t^k = t^n f((1+t)/t), continuous at t = 0.
  double gf_G(double t) const {
    const auto g = converted(Basis::G);
    CompensatedSum<quad> acc;
    quad tp = 1;
    for (std::uint32_t k = 0; k <= n_; ++k) {
      acc.add(binomial_q(n_, k) * g[n_ - k] * tp);
      tp *= quad(t);
    }
    return static_cast<double>(acc.value());
  }

  // Raw weight moments through order three. Factorial moments come straight
  // from the G family: E[(W choose k)] k! = n! / (n-k)! G_k, so
  //   mu1 = n G_1,
  //   mu2 = n (n-1) G_2 + n G_1,
  //   mu3 = n (n-1) (n-2) G_3 + 3 n (n-1) G_2 + n G_1.
  MomentSet moments() const {
    const auto g = converted(Basis::G);
    const quad nq = quad(n_);
    const quad g1 = g[1];
    const quad g2 = n_ >= 2 ? g[2] : quad(0);
    const quad g3 = n_ >= 3 ? g[3] : quad(0);
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

 private:
  struct Unchecked {};

  IsotropicDistribution(std::uint32_t n, Basis basis, std::vector<quad> coeffs,
                        Unchecked)
      : n_(n), basis_(basis), coeffs_(std::move(coeffs)) {}

  static std::uint32_t check_n(std::uint32_t n) {
    if (n == 0 || n > kMaxLength)
      throw std::invalid_argument(
          "IsotropicDistribution: n must be in [1, 2^20]");
    return n;
  }

  void validate(double tol) const {
    const auto bad = [&](const std::string& what) {
      throw std::invalid_argument("IsotropicDistribution: " + what);
    };
    for (std::uint32_t k = 0; k <= n_; ++k) {
      const double c = static_cast<double>(coeffs_[k]);
      if (!(c >= -tol)) bad("negative coefficient at index " + std::to_string(k));
      if (basis_ != Basis::P && !(c <= 1.0 + tol))
        bad("probability coefficient above 1 at index " + std::to_string(k));
    }
    switch (basis_) {
      case Basis::P: {
        CompensatedSum<quad> total;
        for (std::uint32_t k = 0; k <= n_; ++k)
          total.add(binomial_q(n_, k) * coeffs_[k]);
        const double t = static_cast<double>(total.value());
        if (!(t >= 1.0 - tol && t <= 1.0 + tol))
          bad("weight masses C(n,k) p_k must sum to 1, got " +
              std::to_string(t));
        break;
      }
      case Basis::F: {
        const double fn = static_cast<double>(coeffs_[n_]);
        if (!(fn >= 1.0 - tol && fn <= 1.0 + tol)) bad("F_n must equal 1");
        for (std::uint32_t a = 0; a < n_; ++a)
          if (static_cast<double>(coeffs_[a] - coeffs_[a + 1]) > tol)
            bad("F must be nondecreasing");
        break;
      }
      case Basis::G: {
        const double g0 = static_cast<double>(coeffs_[0]);
        if (!(g0 >= 1.0 - tol && g0 <= 1.0 + tol)) bad("G_0 must equal 1");
        for (std::uint32_t a = 0; a < n_; ++a)
          if (static_cast<double>(coeffs_[a + 1] - coeffs_[a]) > tol)
            bad("G must be nonincreasing");
        break;
      }
    }
  }

  // All six pairwise conversions, in quad with compensated sums.
  std::vector<quad> converted(Basis target) const {
    if (target == basis_) return coeffs_;
    const std::size_t m = static_cast<std::size_t>(n_) + 1;
    const auto rows = binomial_rows(n_);
    std::vector<quad> out(m);
    const auto& c = coeffs_;

    if (basis_ == Basis::P && target == Basis::F) {
      // F_a = sum_{k <= a} C(a,k) p_k
      for (std::uint32_t a = 0; a <= n_; ++a) {
        CompensatedSum<quad> s;
        for (std::uint32_t k = 0; k <= a; ++k) s.add(rows[a][k] * c[k]);
        out[a] = s.value();
      }
    } else if (basis_ == Basis::P && target == Basis::G) {
      // G_a = sum_{k >= a} C(n-a, k-a) p_k
      for (std::uint32_t a = 0; a <= n_; ++a) {
        CompensatedSum<quad> s;
        for (std::uint32_t k = a; k <= n_; ++k)
          s.add(rows[n_ - a][k - a] * c[k]);
        out[a] = s.value();
      }
    } else if (basis_ == Basis::F && target == Basis::P) {
      // p_m = sum_{k <= m} (-1)^(m+k) C(m,k) F_k
      for (std::uint32_t mm = 0; mm <= n_; ++mm) {
        CompensatedSum<quad> s;
        for (std::uint32_t k = 0; k <= mm; ++k) {
          const quad term = rows[mm][k] * c[k];
          s.add(((mm - k) & 1u) ? -term : term);
        }
        out[mm] = s.value();
      }
    } else if (basis_ == Basis::F && target == Basis::G) {
      // G_m = sum_{k <= m} (-1)^k C(m,k) F_{n-k}
      for (std::uint32_t mm = 0; mm <= n_; ++mm) {
        CompensatedSum<quad> s;
        for (std::uint32_t k = 0; k <= mm; ++k) {
          const quad term = rows[mm][k] * c[n_ - k];
          s.add((k & 1u) ? -term : term);
        }
        out[mm] = s.value();
      }
    } else if (basis_ == Basis::G && target == Basis::P) {
      // p_j = sum_{i >= j} (-1)^(i+j) C(n-j, i-j) G_i
      for (std::uint32_t j = 0; j <= n_; ++j) {
        CompensatedSum<quad> s;
        for (std::uint32_t i = j; i <= n_; ++i) {
          const quad term = rows[n_ - j][i - j] * c[i];
          s.add(((i - j) & 1u) ? -term : term);
        }
        out[j] = s.value();
      }
    } else {  // G -> F
      // F_a = sum_{k <= n-a} (-1)^k C(n-a, k) G_k
      for (std::uint32_t a = 0; a <= n_; ++a) {
        CompensatedSum<quad> s;
        for (std::uint32_t k = 0; k <= n_ - a; ++k) {
          const quad term = rows[n_ - a][k] * c[k];
          s.add((k & 1u) ? -term : term);
        }
        out[a] = s.value();
      }
    }
    return out;
  }

  std::uint32_t n_;
  Basis basis_;
  std::vector<quad> coeffs_;
};

}  // namespace sic
