#pragma once

// Probability models for source patterns: which subsets of the N attributes
// a record activates. Only the weight structure matters downstream, and it
// enters every formula through the generating function
//   Pi(t) = E[t^W] = sum_beta P(beta) t^|beta|.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sic/bit_pattern.hpp"
#include "sic/combinatorics.hpp"
#include "sic/isotropic.hpp"

namespace sic {

class SourceModel {
 public:
  enum class Kind { FixedWeight, IndependentBits, Empirical };

  // Degenerate placeholder (one attribute, never set) so configs can be
  // built field by field; every factory replaces it.
  SourceModel() : SourceModel(Kind::FixedWeight, 1) {}

  // Uniform over the C(N, r) patterns of weight exactly r.
  static SourceModel fixed_weight(std::uint32_t N, std::uint32_t r) {
    check_size(N);
    if (r > N)
      throw std::invalid_argument("SourceModel: fixed weight r must be <= N");
    SourceModel m(Kind::FixedWeight, N);
    m.fixed_r_ = r;
    return m;
  }

  // Bit j set independently with probability p[j]; N = p.size().
  static SourceModel independent_bits(std::vector<double> p) {
    check_size(static_cast<std::uint32_t>(p.size()));
    for (std::size_t j = 0; j < p.size(); ++j)
      if (!(p[j] >= 0.0 && p[j] <= 1.0))
        throw std::invalid_argument(
            "SourceModel: bit probability out of [0, 1] at index " +
            std::to_string(j));
    SourceModel m(Kind::IndependentBits, static_cast<std::uint32_t>(p.size()));
    m.bit_probs_ = std::move(p);
    return m;
  }

  // Isotropic model given by a weight histogram (index w = P[W = w],
  // uniform over patterns within each weight class).
  static SourceModel empirical(std::uint32_t N,
                               std::span<const double> weight_hist,
                               double tolerance = 1e-9) {
    check_size(N);
    if (weight_hist.size() != static_cast<std::size_t>(N) + 1)
      throw std::invalid_argument(
          "SourceModel: weight histogram needs N + 1 entries");
    double total = 0;
    for (std::size_t w = 0; w < weight_hist.size(); ++w) {
      if (!(weight_hist[w] >= -tolerance))
        throw std::invalid_argument(
            "SourceModel: negative histogram mass at weight " +
            std::to_string(w));
      total += weight_hist[w];
    }
    if (!(total >= 1.0 - tolerance && total <= 1.0 + tolerance))
      throw std::invalid_argument(
          "SourceModel: histogram must sum to 1, got " + std::to_string(total));
    SourceModel m(Kind::Empirical, N);
    m.hist_.assign(weight_hist.begin(), weight_hist.end());
    return m;
  }

  Kind kind() const noexcept { return kind_; }
  std::uint32_t size() const noexcept { return size_; }

  std::uint32_t fixed_r() const {
    require(Kind::FixedWeight);
    return fixed_r_;
  }
  const std::vector<double>& bit_probs() const {
    require(Kind::IndependentBits);
    return bit_probs_;
  }

  // Pi(t); for t in [0, 1] this is a probability-like value in [0, 1].
  double gf(double t) const {
    switch (kind_) {
      case Kind::FixedWeight: {
        double v = 1;
        for (std::uint32_t i = 0; i < fixed_r_; ++i) v *= t;
        return v;
      }
      case Kind::IndependentBits: {
        // Log space for long products (t >= 0 keeps every factor
        // nonnegative); a direct product of ~1000 sub-one factors loses
        // accuracy to gradual underflow long before the value does.
        if (size_ > 64 && t >= 0.0) {
          double ln = 0;
          for (double p : bit_probs_) {
            const double f = 1.0 - p + p * t;
            if (f <= 0.0) return 0.0;
            ln += std::log(f);
          }
          return std::exp(ln);
        }
        double v = 1;
        for (double p : bit_probs_) v *= 1.0 - p + p * t;
        return v;
      }
      case Kind::Empirical: {
        CompensatedSum<double> acc;
        double tp = 1;
        for (std::size_t w = 0; w < hist_.size(); ++w) {
          acc.add(hist_[w] * tp);
          tp *= t;
        }
        return acc.value();
      }
    }
    return 0;
  }

  // Probability of one specific pattern (length must equal N).
  double pattern_probability(const BitPattern& beta) const {
    if (beta.length() != size_)
      throw std::invalid_argument("SourceModel: pattern length mismatch");
    const std::uint32_t w = beta.weight();
    switch (kind_) {
      case Kind::FixedWeight:
        if (w != fixed_r_) return 0.0;
        return std::exp(-ln_binomial(size_, w));
      case Kind::IndependentBits: {
        double v = 1;
        for (std::uint32_t j = 0; j < size_; ++j)
          v *= beta.test(j) ? bit_probs_[j] : 1.0 - bit_probs_[j];
        return v;
      }
      case Kind::Empirical:
        return hist_[w] * std::exp(-ln_binomial(size_, w));
    }
    return 0;
  }

  // P[W = w] for w = 0..N. For independent bits this is the standard
  // convolution (O(N^2)); elsewhere it is immediate.
  std::vector<double> weight_histogram() const {
    std::vector<double> h(static_cast<std::size_t>(size_) + 1, 0.0);
    switch (kind_) {
      case Kind::FixedWeight:
        h[fixed_r_] = 1.0;
        break;
      case Kind::IndependentBits: {
        h[0] = 1.0;
        std::uint32_t top = 0;
        for (double p : bit_probs_) {
          ++top;
          // Descend so h[w - 1] is still the previous bit's value; w == top
          // is the newly reachable weight and reads h[top] == 0.
          for (std::uint32_t w = top + 1; w-- > 0;) {
            const double carry = w > 0 ? h[w - 1] * p : 0.0;
            h[w] = h[w] * (1.0 - p) + carry;
          }
        }
        break;
      }
      case Kind::Empirical:
        h = hist_;
        break;
    }
    return h;
  }

  // Raw moments of W through order three.
  MomentSet weight_moments() const {
    MomentSet m;
    switch (kind_) {
      case Kind::FixedWeight: {
        const double r = fixed_r_;
        m.mu1 = r;
        m.mu2 = r * r;
        m.mu3 = r * r * r;
        m.variance = 0;
        break;
      }
      case Kind::IndependentBits: {
        double mu = 0, var = 0, k3 = 0;
        for (double p : bit_probs_) {
          mu += p;
          var += p * (1 - p);
          k3 += p * (1 - p) * (1 - 2 * p);
        }
        m.mu1 = mu;
        m.variance = var;
        m.mu2 = var + mu * mu;
        m.mu3 = k3 + 3 * mu * m.mu2 - 2 * mu * mu * mu;
        break;
      }
      case Kind::Empirical: {
        CompensatedSum<double> s1, s2, s3;
        for (std::size_t w = 0; w < hist_.size(); ++w) {
          const double wd = static_cast<double>(w);
          s1.add(hist_[w] * wd);
          s2.add(hist_[w] * wd * wd);
          s3.add(hist_[w] * wd * wd * wd);
        }
        m.mu1 = s1.value();
        m.mu2 = s2.value();
        m.mu3 = s3.value();
        m.variance = m.mu2 - m.mu1 * m.mu1;
        break;
      }
    }
    return m;
  }

 private:
  SourceModel(Kind kind, std::uint32_t size) : kind_(kind), size_(size) {}

  static void check_size(std::uint32_t N) {
    if (N == 0)
      throw std::invalid_argument("SourceModel: N must be >= 1");
  }
  void require(Kind k) const {
    if (kind_ != k)
      throw std::logic_error("SourceModel: accessor does not match kind");
  }

  Kind kind_;
  std::uint32_t size_;
  std::uint32_t fixed_r_ = 0;
  std::vector<double> bit_probs_;
  std::vector<double> hist_;
};

// Pi(t) as a free function, matching the formula-level naming.
inline double source_gf(const SourceModel& model, double t) {
  return model.gf(t);
}

}  // namespace sic
