#pragma once

// Monte Carlo and exact-enumeration validation of the analytic machinery:
// empirical signature distributions, false-drop rates, and predicted vs
// observed comparisons with z-scores.
//
// Determinism contract: every trial t owns the PRNG stream
// stream_seed(seed ^ domain, t), so results are identical regardless of
// execution order and reproducible from (seed, config) alone.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sic/analysis.hpp"
#include "sic/bit_pattern.hpp"
#include "sic/codegen.hpp"
#include "sic/optimizer.hpp"
#include "sic/rng.hpp"
#include "sic/source_model.hpp"

namespace sic {

namespace detail {
inline constexpr std::uint64_t kTargetDomain = 0xA3C59AC1B0F2D3E5ull;
inline constexpr std::uint64_t kPairDomain = 0x5851F42D4C957F2Dull;
}  // namespace detail

struct SimConfig {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  SourceModel source;
  std::vector<CodeSpec> specs;       // one per source bit, shared n
  bool regenerate_codebook = true;   // fresh words per trial vs one fixed book
  std::vector<std::uint32_t> mask_weights;  // extra P(psi <= mask) probes
};

struct Comparison {
  std::string name;
  double predicted = 0;
  double observed = 0;
  double z = 0;
  bool approximate = false;  // prediction itself is an approximation
};

struct SimResult {
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> weight_hist;  // signature weight counts, 0..n
  double mean_weight = 0;
  double variance_weight = 0;              // sample variance
  double empirical_g1 = 0;                 // mean / n
  double se_g1 = 0;

  // False-drop experiment only.
  std::uint64_t covers_all = 0;            // query signature covered, all pairs
  std::uint64_t source_matches = 0;        // pairs whose sources already cover
  std::uint64_t covers_nonmatch = 0;       // covers among non-matching pairs
  std::uint64_t disjoint_pairs = 0;        // pairs sharing no source bit
  std::uint64_t covers_disjoint = 0;       // covers among disjoint pairs
  double empirical_theta = 0;              // covers_all / trials
  double se_theta = 0;
  double theta_nonmatch = 0;
  double theta_disjoint = 0;
  double rb_theta = 0;                     // weight-conditional estimator
  double rb_ln_theta = 0;
  double rb_se_ln = 0;                     // standard error of rb_ln_theta

  std::vector<Comparison> comparisons;

  // True when every exact prediction sits within z_limit standard errors.
  bool passed(double z_limit = 4.0) const {
    for (const auto& c : comparisons)
      if (!c.approximate && !(std::abs(c.z) <= z_limit)) return false;
    return true;
  }
};

// One source pattern per the model, consuming rng deterministically
// (fixed weight: one subset draw; independent: one draw per bit ascending;
// empirical: one weight draw then one subset draw).
inline BitPattern sample_source(const SourceModel& model, SplitMix64& rng) {
  const std::uint32_t N = model.size();
  BitPattern out(N);
  switch (model.kind()) {
    case SourceModel::Kind::FixedWeight:
      for (auto pos : detail::sample_distinct(N, model.fixed_r(), rng))
        out.set(pos);
      break;
    case SourceModel::Kind::IndependentBits: {
      const auto& p = model.bit_probs();
      for (std::uint32_t j = 0; j < N; ++j)
        if (rng.next_double() < p[j]) out.set(j);
      break;
    }
    case SourceModel::Kind::Empirical: {
      const auto hist = model.weight_histogram();
      const double u = rng.next_double();
      double acc = 0;
      std::uint32_t w = N;
      for (std::uint32_t k = 0; k <= N; ++k) {
        acc += hist[k];
        if (u < acc) {
          w = k;
          break;
        }
      }
      for (auto pos : detail::sample_distinct(N, w, rng)) out.set(pos);
      break;
    }
  }
  return out;
}

namespace detail {

inline void check_config(const SimConfig& cfg) {
  if (cfg.trials == 0)
    throw std::invalid_argument("simulator: trials must be >= 1");
  if (cfg.specs.empty())
    throw std::invalid_argument("simulator: need one spec per source bit");
  if (cfg.specs.size() != cfg.source.size())
    throw std::invalid_argument(
        "simulator: spec count must equal source bit count");
  const std::uint32_t n = cfg.specs[0].n;
  for (const auto& s : cfg.specs)
    if (s.n != n)
      throw std::invalid_argument("simulator: specs disagree on n");
}

inline bool uniform_specs(std::span<const CodeSpec> specs) {
  for (const auto& s : specs)
    if (!(s == specs[0])) return false;
  return true;
}

// F'_a prediction when one exists: uniform specs compose through Pi;
// independent sources compose per bit. Otherwise nullopt.
inline std::optional<double> predicted_target_f(const SimConfig& cfg,
                                                std::uint32_t a) {
  if (uniform_specs(cfg.specs))
    return cfg.source.gf(cfg.specs[0].coeff_F(a));
  if (cfg.source.kind() == SourceModel::Kind::IndependentBits) {
    const auto& p = cfg.source.bit_probs();
    double v = 1;
    for (std::size_t j = 0; j < cfg.specs.size(); ++j)
      v *= p[j] * cfg.specs[j].coeff_F(a) + 1.0 - p[j];
    return v;
  }
  return std::nullopt;
}

inline double safe_z(double observed, double predicted, double se) {
  if (se > 0) return (observed - predicted) / se;
  return observed == predicted ? 0.0
                               : std::numeric_limits<double>::infinity();
}

// Builds the signature of source through per-bit word regeneration from
// the trial's own stream: words for set bits ascending.
inline BitPattern regenerate_signature(const BitPattern& source,
                                       std::span<const CodeSpec> specs,
                                       SplitMix64& rng, std::uint32_t n) {
  BitPattern sig(n);
  for (auto j : source.positions()) sig |= sample_codeword(specs[j], rng);
  return sig;
}

}  // namespace detail

// Weight statistics of simulated record signatures, with optional mask
// cover probes P(psi <= prefix mask of weight a) and prediction
// comparisons where closed forms exist.
inline SimResult run_target_experiment(const SimConfig& cfg) {
  detail::check_config(cfg);
  const std::uint32_t n = cfg.specs[0].n;
  const double T = static_cast<double>(cfg.trials);

  std::optional<Codebook> book;
  if (!cfg.regenerate_codebook)
    book = build_codebook(cfg.specs, cfg.seed);

  std::vector<BitPattern> masks;
  for (auto a : cfg.mask_weights) {
    if (a > n)
      throw std::invalid_argument("simulator: mask weight exceeds n");
    BitPattern m(n);
    for (std::uint32_t i = 0; i < a; ++i) m.set(i);
    masks.push_back(m);
  }
  std::vector<std::uint64_t> mask_hits(masks.size(), 0);

  SimResult res;
  res.trials = cfg.trials;
  res.weight_hist.assign(static_cast<std::size_t>(n) + 1, 0);

  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    SplitMix64 rng(stream_seed(cfg.seed ^ detail::kTargetDomain, t));
    const BitPattern src = sample_source(cfg.source, rng);
    const BitPattern sig =
        book ? book->encode(src)
             : detail::regenerate_signature(src, cfg.specs, rng, n);
    const std::uint32_t wv = sig.weight();
    const double w = wv;
    res.weight_hist[wv]++;
    s1 += w;
    s2 += w * w;
    s3 += w * w * w;
    s4 += w * w * w * w;
    for (std::size_t mi = 0; mi < masks.size(); ++mi)
      if (sig.covered_by(masks[mi])) mask_hits[mi]++;
  }

  const double mean = s1 / T;
  const double var = T > 1 ? (s2 - T * mean * mean) / (T - 1) : 0.0;
  res.mean_weight = mean;
  res.variance_weight = var;
  res.empirical_g1 = mean / double(n);
  res.se_g1 = T > 1 ? std::sqrt(var / T) / double(n) : 0.0;

  // Central fourth moment, for the standard error of the sample variance.
  const double m2c = s2 / T - mean * mean;
  const double m4c = s4 / T - 4 * mean * (s3 / T) + 6 * mean * mean * (s2 / T)
                     - 3 * mean * mean * mean * mean;

  const auto f1 = detail::predicted_target_f(cfg, n - 1);
  const auto f2 = n >= 2 ? detail::predicted_target_f(cfg, n - 2)
                         : std::optional<double>(1.0);
  const auto f3 = n >= 3 ? detail::predicted_target_f(cfg, n - 3)
                         : std::optional<double>(1.0);
  if (f1 && f2 && f3) {
    // Predictions describe the codebook ensemble. Regenerated trials sample
    // it exactly; any single fixed book deviates by its own sampling error,
    // so fixed-book rows are approximate and never hard-fail the run.
    const bool approx = !cfg.regenerate_codebook;
    const auto pm = detail::moments_from_top_f(n, *f1, *f2, *f3);
    const double se_mean = T > 1 ? std::sqrt(var / T) : 0.0;
    res.comparisons.push_back({"mean_weight", pm.mu1, mean,
                               detail::safe_z(mean, pm.mu1, se_mean), approx});
    res.comparisons.push_back(
        {"g1", 1.0 - *f1, res.empirical_g1,
         detail::safe_z(res.empirical_g1, 1.0 - *f1, res.se_g1), approx});
    const double se_var =
        T > 1 ? std::sqrt(std::max(m4c - m2c * m2c, 0.0) / T) : 0.0;
    res.comparisons.push_back({"variance_weight", pm.variance, var,
                               detail::safe_z(var, pm.variance, se_var),
                               approx});
    for (std::size_t mi = 0; mi < masks.size(); ++mi) {
      const std::uint32_t a = cfg.mask_weights[mi];
      const auto fa = detail::predicted_target_f(cfg, a);
      if (!fa) continue;
      const double obs = double(mask_hits[mi]) / T;
      const double se = std::sqrt(std::max(*fa * (1.0 - *fa), 0.0) / T);
      res.comparisons.push_back({"F_mask_" + std::to_string(a), *fa, obs,
                                 detail::safe_z(obs, *fa, se), approx});
    }
  }
  return res;
}

// Record/query pair experiment. Counts statistical covers (query signature
// covered by record signature) among all pairs, among pairs whose sources
// do not already match, and among pairs with disjoint sources. Shared
// source bits contribute the same word to both signatures, so only the
// disjoint subset has independent signatures; that is where the closed
// forms apply exactly and where the z-gate bites. The weight-conditional
// estimator
//   E[ cover | |sig_r| = k, |sig_q| = a ] = C(n-a, k-a) / C(n, k)
// is averaged over disjoint pairs (signatures there are conditionally
// uniform given weight) and stays informative when theta is far below
// 1/trials.
inline SimResult run_false_drop_experiment(const SimConfig& cfg,
                                           const SourceModel& query_model) {
  detail::check_config(cfg);
  if (query_model.size() != cfg.source.size())
    throw std::invalid_argument(
        "simulator: record and query models must share N");
  const std::uint32_t n = cfg.specs[0].n;
  const double T = static_cast<double>(cfg.trials);

  std::optional<Codebook> book;
  if (!cfg.regenerate_codebook)
    book = build_codebook(cfg.specs, cfg.seed);

  SimResult res;
  res.trials = cfg.trials;
  res.weight_hist.assign(static_cast<std::size_t>(n) + 1, 0);

  double s1 = 0, s2 = 0;
  double rb_sum = 0, rb_sumsq = 0;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    SplitMix64 rng(stream_seed(cfg.seed ^ detail::kPairDomain, t));
    const BitPattern record = sample_source(cfg.source, rng);
    const BitPattern query = sample_source(query_model, rng);

    BitPattern sig_r(n), sig_q(n);
    if (book) {
      sig_r = book->encode(record);
      sig_q = book->encode(query);
    } else {
      // One shared word per union bit, drawn ascending from the pair's
      // stream; a bit set in both sources contributes the same word to
      // both signatures.
      for (auto j : (record | query).positions()) {
        const BitPattern wj = sample_codeword(cfg.specs[j], rng);
        if (record.test(j)) sig_r |= wj;
        if (query.test(j)) sig_q |= wj;
      }
    }

    const std::uint32_t k = sig_r.weight();
    const std::uint32_t a = sig_q.weight();
    res.weight_hist[k]++;
    s1 += k;
    s2 += double(k) * k;

    const bool cover = sig_q.covered_by(sig_r);
    res.covers_all += cover;
    if (query.covered_by(record)) {
      res.source_matches++;
    } else {
      res.covers_nonmatch += cover;
    }
    if (!intersects(record, query)) {
      res.disjoint_pairs++;
      res.covers_disjoint += cover;
      const double h = cover_probability_given_weights(n, k, a);
      rb_sum += h;
      rb_sumsq += h * h;
    }
  }

  const double mean = s1 / T;
  res.mean_weight = mean;
  res.variance_weight = T > 1 ? (s2 - T * mean * mean) / (T - 1) : 0.0;
  res.empirical_g1 = mean / double(n);
  res.se_g1 =
      T > 1 ? std::sqrt(res.variance_weight / T) / double(n) : 0.0;

  res.empirical_theta = double(res.covers_all) / T;
  res.se_theta = std::sqrt(
      std::max(res.empirical_theta * (1.0 - res.empirical_theta), 0.0) / T);
  const std::uint64_t nonmatch = cfg.trials - res.source_matches;
  res.theta_nonmatch =
      nonmatch > 0 ? double(res.covers_nonmatch) / double(nonmatch) : 0.0;
  const double D = static_cast<double>(res.disjoint_pairs);
  res.theta_disjoint =
      res.disjoint_pairs > 0 ? double(res.covers_disjoint) / D : 0.0;

  if (res.disjoint_pairs > 0) {
    res.rb_theta = rb_sum / D;
    const double rb_var =
        res.disjoint_pairs > 1
            ? std::max(rb_sumsq - D * res.rb_theta * res.rb_theta, 0.0) /
                  (D - 1)
            : 0.0;
    res.rb_ln_theta = res.rb_theta > 0
                          ? std::log(res.rb_theta)
                          : -std::numeric_limits<double>::infinity();
    res.rb_se_ln =
        res.rb_theta > 0 ? std::sqrt(rb_var / D) / res.rb_theta : 0.0;
  }

  // Predictions exist for uniform specs and fixed source/query weights. The
  // plug-in formula models independent signatures, so only the disjoint-pair
  // rows can be exact; the all-pairs row (the classical theta) carries a
  // source-overlap bias of order r*s/N and never hard-fails the run.
  if (detail::uniform_specs(cfg.specs) &&
      cfg.source.kind() == SourceModel::Kind::FixedWeight &&
      query_model.kind() == SourceModel::Kind::FixedWeight) {
    const auto& spec = cfg.specs[0];
    const std::uint32_t r = cfg.source.fixed_r();
    const std::uint32_t s = query_model.fixed_r();
    double ln_pred = 0;
    // Exact only when signatures are independent with iid bits: binomial
    // words regenerated per pair. The fixed-weight formula and any single
    // fixed book are approximations.
    bool approx = true;
    if (spec.kind == CodeSpec::Kind::Binomial) {
      ln_pred = ln_false_drop_binomial(n, r, s, spec.q);
      approx = !cfg.regenerate_codebook;
    } else {
      ln_pred = ln_false_drop_fixed_weight(n, r, s, spec.w);
    }
    const double pred = std::exp(ln_pred);
    const double se_all = std::sqrt(std::max(pred * (1.0 - pred), 0.0) / T);
    res.comparisons.push_back(
        {"theta_all_pairs", pred, res.empirical_theta,
         detail::safe_z(res.empirical_theta, pred, se_all), true});
    res.comparisons.push_back(
        {"theta_nonmatching", pred, res.theta_nonmatch,
         detail::safe_z(res.theta_nonmatch, pred, se_all), true});
    if (res.disjoint_pairs > 0) {
      const double se_dis =
          std::sqrt(std::max(pred * (1.0 - pred), 0.0) / D);
      res.comparisons.push_back(
          {"theta_disjoint", pred, res.theta_disjoint,
           detail::safe_z(res.theta_disjoint, pred, se_dis), approx});
      // The conditional estimator has its own (much smaller) standard
      // error; compare on the log scale where the formula is quoted.
      res.comparisons.push_back(
          {"ln_theta_conditional", ln_pred, res.rb_ln_theta,
           detail::safe_z(res.rb_ln_theta, ln_pred, res.rb_se_ln), approx});
    }
  }
  return res;
}

// Exact F' by enumeration of all 2^N source patterns against per-bit
// coefficients: F'_a = sum_beta P(beta) prod_{j in beta} F_j(a). The
// brute-force oracle for the composition formulas.
inline std::vector<double> exact_target_coeffs(
    std::span<const double> pattern_probs,
    std::span<const std::vector<double>> per_bit_f) {
  const std::size_t N = per_bit_f.size();
  if (N == 0 || N > 20)
    throw std::invalid_argument("exact enumeration: need 1 <= N <= 20");
  if (pattern_probs.size() != (std::size_t(1) << N))
    throw std::invalid_argument("exact enumeration: need 2^N probabilities");
  const std::size_t n1 = per_bit_f[0].size();
  for (const auto& f : per_bit_f)
    if (f.size() != n1)
      throw std::invalid_argument("exact enumeration: ragged coefficients");

  std::vector<double> out(n1, 0.0);
  for (std::size_t a = 0; a < n1; ++a) {
    CompensatedSum<double> acc;
    for (std::size_t beta = 0; beta < pattern_probs.size(); ++beta) {
      double prod = pattern_probs[beta];
      for (std::size_t j = 0; j < N; ++j)
        if ((beta >> j) & 1u) prod *= per_bit_f[j][a];
      acc.add(prod);
    }
    out[a] = acc.value();
  }
  return out;
}

// Enumeration oracle over a SourceModel and per-bit specs.
inline IsotropicDistribution exact_enumeration(const SourceModel& model,
                                               std::span<const CodeSpec> specs) {
  const std::uint32_t N = model.size();
  if (N > 20)
    throw std::invalid_argument("exact enumeration: N too large (> 20)");
  if (specs.size() != N)
    throw std::invalid_argument("exact enumeration: need one spec per bit");
  const std::uint32_t n = specs[0].n;

  std::vector<std::vector<double>> per_bit_f;
  per_bit_f.reserve(N);
  for (const auto& s : specs) {
    if (s.n != n)
      throw std::invalid_argument("exact enumeration: specs disagree on n");
    per_bit_f.push_back(s.distribution().coeffs());
  }

  std::vector<double> probs(std::size_t(1) << N);
  for (std::size_t b = 0; b < probs.size(); ++b) {
    BitPattern beta(N);
    for (std::uint32_t j = 0; j < N; ++j)
      if ((b >> j) & 1u) beta.set(j);
    probs[b] = model.pattern_probability(beta);
  }

  const auto f = exact_target_coeffs(probs, per_bit_f);
  return IsotropicDistribution(n, Basis::F, f);
}

}  // namespace sic
