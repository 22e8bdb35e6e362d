#pragma once

// Code word generation. A codebook assigns every one of the N attributes a
// random n-bit code word; a record's signature is the OR of the words its
// source pattern selects. Word j is drawn from its spec with a SplitMix64
// stream seeded by stream_seed(seed, j), so (seed, specs) fully determines
// the codebook and words can be regenerated individually in any order.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "sic/bit_pattern.hpp"
#include "sic/isotropic.hpp"
#include "sic/rng.hpp"

namespace sic {

// Distribution of a single code word: uniform fixed weight w, or each bit
// set independently with probability 1 - q (q = per-bit zero probability).
struct CodeSpec {
  enum class Kind : std::uint8_t { FixedWeight = 0, Binomial = 1 };

  Kind kind = Kind::FixedWeight;
  std::uint32_t n = 0;
  std::uint32_t w = 0;  // FixedWeight only
  double q = 0;         // Binomial only

  // w = 0 is allowed: an attribute with an always-empty word is effectively
  // excluded from the code (used for zero-probability source bits).
  static CodeSpec fixed_weight(std::uint32_t n, std::uint32_t w) {
    if (n == 0) throw std::invalid_argument("CodeSpec: n must be >= 1");
    if (w > n) throw std::invalid_argument("CodeSpec: weight w must be <= n");
    CodeSpec s;
    s.kind = Kind::FixedWeight;
    s.n = n;
    s.w = w;
    return s;
  }

  static CodeSpec binomial(std::uint32_t n, double q) {
    if (n == 0) throw std::invalid_argument("CodeSpec: n must be >= 1");
    if (!(q > 0.0 && q < 1.0))
      throw std::invalid_argument("CodeSpec: q must be in (0, 1)");
    CodeSpec s;
    s.kind = Kind::Binomial;
    s.n = n;
    s.q = q;
    return s;
  }

  IsotropicDistribution distribution() const {
    return kind == Kind::FixedWeight
               ? IsotropicDistribution::from_fixed_weight(n, w)
               : IsotropicDistribution::from_binomial(n, q);
  }

  // F_a for this word's distribution, computed directly (no full vector):
  // binomial: q^(n-a); fixed weight: C(n-w, n-a) / C(n, a).
  double coeff_F(std::uint32_t a) const {
    if (a > n) throw std::out_of_range("CodeSpec::coeff_F: a exceeds n");
    if (kind == Kind::Binomial) {
      double v = 1;
      for (std::uint32_t i = a; i < n; ++i) v *= q;
      return v;
    }
    if (a < w) return 0.0;
    return static_cast<double>(binomial_q(n - w, n - a) / binomial_q(n, a));
  }

  bool operator==(const CodeSpec&) const = default;
};

// Word distribution of a spec as a full coefficient object.
inline IsotropicDistribution spec_coefficients(const CodeSpec& spec) {
  return spec.distribution();
}

namespace detail {

// First w slots of a Fisher-Yates shuffle of 0..n-1, drawing exactly w
// bounded values from rng. The sparse map keeps it O(w) for large n; the
// dense path is byte-identical in its rng consumption.
inline std::vector<std::uint32_t> sample_distinct(std::uint32_t n,
                                                  std::uint32_t w,
                                                  SplitMix64& rng) {
  std::vector<std::uint32_t> out;
  out.reserve(w);
  if (n <= 4096) {
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    for (std::uint32_t i = 0; i < w; ++i) {
      const auto j = i + static_cast<std::uint32_t>(rng.next_below(n - i));
      std::swap(perm[i], perm[j]);
      out.push_back(perm[i]);
    }
  } else {
    std::unordered_map<std::uint32_t, std::uint32_t> perm;
    const auto value_at = [&](std::uint32_t i) {
      auto it = perm.find(i);
      return it == perm.end() ? i : it->second;
    };
    for (std::uint32_t i = 0; i < w; ++i) {
      const auto j = i + static_cast<std::uint32_t>(rng.next_below(n - i));
      const auto vi = value_at(i);
      const auto vj = value_at(j);
      perm[i] = vj;
      perm[j] = vi;
      out.push_back(vj);
    }
  }
  return out;
}

}  // namespace detail

// Draws one code word from spec, consuming rng deterministically:
// binomial consumes one draw per bit position (ascending), fixed weight
// consumes exactly w bounded draws (partial Fisher-Yates).
inline BitPattern sample_codeword(const CodeSpec& spec, SplitMix64& rng) {
  BitPattern word(spec.n);
  if (spec.kind == CodeSpec::Kind::Binomial) {
    const double p_set = 1.0 - spec.q;
    for (std::uint32_t i = 0; i < spec.n; ++i)
      if (rng.next_double() < p_set) word.set(i);
  } else {
    for (auto pos : detail::sample_distinct(spec.n, spec.w, rng)) word.set(pos);
  }
  return word;
}

struct Codebook {
  std::uint32_t n = 0;
  std::uint64_t seed = 0;
  std::vector<CodeSpec> specs;      // one per attribute, all with equal n
  std::vector<BitPattern> words;    // words[j] regenerable from (seed, j)

  std::uint32_t attribute_count() const {
    return static_cast<std::uint32_t>(specs.size());
  }

  BitPattern encode(const BitPattern& source) const {
    return superimpose(words, source);
  }
};

// Regenerates word j of the keyed family without building the whole book.
inline BitPattern codeword_at(const CodeSpec& spec, std::uint64_t seed,
                              std::uint64_t j) {
  SplitMix64 rng(stream_seed(seed, j));
  return sample_codeword(spec, rng);
}

inline Codebook build_codebook(std::span<const CodeSpec> specs,
                               std::uint64_t seed) {
  if (specs.empty())
    throw std::invalid_argument("build_codebook: need at least one spec");
  const std::uint32_t n = specs[0].n;
  for (const auto& s : specs)
    if (s.n != n)
      throw std::invalid_argument("build_codebook: specs disagree on n");
  Codebook book;
  book.n = n;
  book.seed = seed;
  book.specs.assign(specs.begin(), specs.end());
  book.words.reserve(specs.size());
  for (std::size_t j = 0; j < specs.size(); ++j)
    book.words.push_back(codeword_at(specs[j], seed, j));
  return book;
}

// Uniform codebook: N attributes sharing one spec.
inline Codebook build_codebook(std::uint32_t N, const CodeSpec& spec,
                               std::uint64_t seed) {
  std::vector<CodeSpec> specs(N, spec);
  return build_codebook(specs, seed);
}

}  // namespace sic
