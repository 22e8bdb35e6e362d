#pragma once

// Fixed-length bit patterns and the superimposition (bitwise OR) algebra.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sic {

// A pattern of n >= 1 bits packed LSB-first into 64-bit words: bit i lives
// in words()[i / 64] at bit position i % 64. Bits above length are always
// zero, so whole-word operations need no masking.
class BitPattern {
 public:
  explicit BitPattern(std::uint32_t length)
      : length_(length), words_((check_length(length) + 63) / 64, 0) {}

  static BitPattern from_positions(std::uint32_t length,
                                   std::span<const std::uint32_t> positions) {
    BitPattern p(length);
    for (auto pos : positions) p.set(pos);
    return p;
  }

  static BitPattern from_positions(
      std::uint32_t length, std::initializer_list<std::uint32_t> positions) {
    return from_positions(
        length, std::span<const std::uint32_t>(positions.begin(),
                                               positions.size()));
  }

  // Parses "0110..."; character i is bit i.
  static BitPattern from_string(std::string_view bits) {
    BitPattern p(static_cast<std::uint32_t>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1')
        p.set(static_cast<std::uint32_t>(i));
      else if (bits[i] != '0')
        throw std::invalid_argument("BitPattern: string must be 0s and 1s");
    }
    return p;
  }

  std::uint32_t length() const noexcept { return length_; }

  bool test(std::uint32_t pos) const {
    check_pos(pos);
    return (words_[pos / 64] >> (pos % 64)) & 1u;
  }

  void set(std::uint32_t pos) {
    check_pos(pos);
    words_[pos / 64] |= std::uint64_t(1) << (pos % 64);
  }

  void reset(std::uint32_t pos) {
    check_pos(pos);
    words_[pos / 64] &= ~(std::uint64_t(1) << (pos % 64));
  }

  std::uint32_t weight() const noexcept {
    std::uint32_t w = 0;
    for (auto word : words_) w += static_cast<std::uint32_t>(std::popcount(word));
    return w;
  }

  // In-place OR; lengths must match.
  BitPattern& operator|=(const BitPattern& other) {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  friend BitPattern operator|(BitPattern a, const BitPattern& b) {
    a |= b;
    return a;
  }

  // True when every set bit of this pattern is set in big (this <= big in
  // the cover order).
  bool covered_by(const BitPattern& big) const {
    check_same_length(big);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~big.words_[i]) return false;
    return true;
  }

  std::vector<std::uint32_t> positions() const {
    std::vector<std::uint32_t> out;
    out.reserve(weight());
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t word = words_[wi];
      while (word) {
        const int b = std::countr_zero(word);
        out.push_back(static_cast<std::uint32_t>(wi * 64 + b));
        word &= word - 1;
      }
    }
    return out;
  }

  std::string to_string() const {
    std::string s(length_, '0');
    for (std::uint32_t i = 0; i < length_; ++i)
      if ((words_[i / 64] >> (i % 64)) & 1u) s[i] = '1';
    return s;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  // Raw word write for bulk construction. Rejects bits above length so the
  // zero-tail invariant that weight() and covered_by() rely on survives.
  void set_word(std::size_t index, std::uint64_t value) {
    if (index + 1 == words_.size() && length_ % 64 != 0 &&
        (value >> (length_ % 64)) != 0)
      throw std::invalid_argument("BitPattern: word has bits past length");
    words_.at(index) = value;
  }

  bool operator==(const BitPattern&) const = default;

 private:
  static std::uint32_t check_length(std::uint32_t length) {
    if (length == 0)
      throw std::invalid_argument("BitPattern: length must be >= 1");
    return length;
  }
  void check_pos(std::uint32_t pos) const {
    if (pos >= length_)
      throw std::out_of_range("BitPattern: bit position out of range");
  }
  void check_same_length(const BitPattern& other) const {
    if (other.length_ != length_)
      throw std::invalid_argument("BitPattern: length mismatch");
  }

  std::uint32_t length_;
  std::vector<std::uint64_t> words_;
};

// a <= b in the cover order: every set bit of a is set in b.
inline bool covers(const BitPattern& big, const BitPattern& small) {
  return small.covered_by(big);
}

inline bool intersects(const BitPattern& a, const BitPattern& b) {
  if (a.length() != b.length())
    throw std::invalid_argument("BitPattern: length mismatch");
  for (std::size_t i = 0; i < a.words().size(); ++i)
    if (a.words()[i] & b.words()[i]) return true;
  return false;
}

inline BitPattern bit_or(const BitPattern& a, const BitPattern& b) {
  return a | b;
}

// OR of the code words selected by the source pattern's set bits:
// signature(source) = OR of codebook[j] over j with source bit j set.
// The map is a homomorphism: signature(a | b) == signature(a) | signature(b).
inline BitPattern superimpose(std::span<const BitPattern> codebook,
                              const BitPattern& source) {
  if (source.length() != codebook.size())
    throw std::invalid_argument(
        "superimpose: source length must equal codebook size");
  if (codebook.empty())
    throw std::invalid_argument("superimpose: empty codebook");
  BitPattern out(codebook[0].length());
  for (auto j : source.positions()) out |= codebook[j];
  return out;
}

}  // namespace sic
