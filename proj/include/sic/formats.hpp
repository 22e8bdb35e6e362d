#pragma once

// On-disk formats: record sets (text), signature files (binary), codebook
// files (binary), and weight plans (text). All multi-byte integers are
// little-endian regardless of host; patterns are packed bit i -> byte i/8,
// bit position i%8 (least significant first).

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sic/bit_pattern.hpp"
#include "sic/codegen.hpp"

namespace sic::io {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 4);
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 8);
}

inline void put_f64(std::ostream& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

inline std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw FormatError("unexpected end of file");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
  return v;
}

inline std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8))
    throw FormatError("unexpected end of file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return v;
}

inline double get_f64(std::istream& in) {
  return std::bit_cast<double>(get_u64(in));
}

inline void put_pattern(std::ostream& out, const BitPattern& p) {
  const std::uint32_t bytes = (p.length() + 7) / 8;
  for (std::uint32_t i = 0; i < bytes; ++i) {
    const std::uint64_t word = p.words()[i / 8];
    out.put(static_cast<char>((word >> (8 * (i % 8))) & 0xFF));
  }
}

inline BitPattern get_pattern(std::istream& in, std::uint32_t n) {
  const std::uint32_t bytes = (n + 7) / 8;
  std::vector<unsigned char> buf(bytes);
  if (!in.read(reinterpret_cast<char*>(buf.data()), bytes))
    throw FormatError("unexpected end of file in pattern data");
  // Bits above n must be zero; reject files that set them.
  const std::uint32_t tail = n % 8;
  if (tail != 0 && (buf[bytes - 1] >> tail) != 0)
    throw FormatError("pattern has bits beyond length");
  BitPattern p(n);
  for (std::uint32_t wi = 0; wi < (n + 63) / 64; ++wi) {
    std::uint64_t word = 0;
    for (std::uint32_t b = 0; b < 8 && wi * 8 + b < bytes; ++b)
      word |= std::uint64_t(buf[wi * 8 + b]) << (8 * b);
    p.set_word(wi, word);
  }
  return p;
}

inline void expect_magic(std::istream& in, const char* magic) {
  char got[4];
  if (!in.read(got, 4) || std::string_view(got, 4) != magic)
    throw FormatError(std::string("bad magic, expected ") + magic);
}

// Whole-string integer parse; "12x" is an error, not 12.
inline long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw FormatError(what + ": malformed integer");
    return v;
  } catch (const std::logic_error&) {
    throw FormatError(what + ": malformed integer");
  }
}

}  // namespace detail

// --- record sets (text) -----------------------------------------------------
// Header "N=<int>", then one record per line: strictly ascending 0-based
// set-bit positions separated by single spaces; an empty line is the zero
// pattern.

struct RecordSet {
  std::uint32_t N = 0;
  std::vector<BitPattern> records;
};

inline RecordSet read_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("N=", 0) != 0)
    throw FormatError("record file must start with header N=<int>");
  RecordSet set;
  const long long n = detail::parse_int(line.substr(2), "record file header");
  if (n < 1 || n > 0xFFFFFFFFll)
    throw FormatError("record file: N out of range");
  set.N = static_cast<std::uint32_t>(n);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    BitPattern rec(set.N);
    std::istringstream fields(line);
    long prev = -1;
    long pos;
    while (fields >> pos) {
      if (pos < 0 || pos >= static_cast<long>(set.N))
        throw FormatError("record file line " + std::to_string(line_no) +
                          ": position out of range");
      if (pos <= prev)
        throw FormatError("record file line " + std::to_string(line_no) +
                          ": positions must be strictly ascending");
      rec.set(static_cast<std::uint32_t>(pos));
      prev = pos;
    }
    if (!fields.eof())
      throw FormatError("record file line " + std::to_string(line_no) +
                        ": malformed position");
    set.records.push_back(std::move(rec));
  }
  return set;
}

inline void write_records(std::ostream& out, const RecordSet& set) {
  out << "N=" << set.N << "\n";
  for (const auto& rec : set.records) {
    const auto pos = rec.positions();
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (i) out << ' ';
      out << pos[i];
    }
    out << "\n";
  }
}

// --- signature files (binary) -------------------------------------------------
// "SIC1", u32 n, u64 count, then count packed patterns of ceil(n/8) bytes.

struct SignatureSet {
  std::uint32_t n = 0;
  std::vector<BitPattern> signatures;
};

inline void write_signatures(std::ostream& out, std::uint32_t n,
                             std::span<const BitPattern> sigs) {
  out.write("SIC1", 4);
  detail::put_u32(out, n);
  detail::put_u64(out, sigs.size());
  for (const auto& s : sigs) {
    if (s.length() != n)
      throw std::invalid_argument("write_signatures: length mismatch");
    detail::put_pattern(out, s);
  }
}

inline SignatureSet read_signatures(std::istream& in) {
  detail::expect_magic(in, "SIC1");
  SignatureSet set;
  set.n = detail::get_u32(in);
  if (set.n == 0) throw FormatError("signature file: n must be >= 1");
  const std::uint64_t count = detail::get_u64(in);
  set.signatures.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    set.signatures.push_back(detail::get_pattern(in, set.n));
  if (in.peek() != std::char_traits<char>::eof())
    throw FormatError("signature file: trailing bytes");
  return set;
}

// --- codebook files (binary) --------------------------------------------------
// "SCB1", u32 n, u32 N, u64 seed; per attribute a spec record (u8 kind:
// 0 fixed-weight / 1 binomial, f64 parameter), then the N packed words.
// On read, words are regenerated from (seed, specs) and must match the
// stored bytes exactly.

inline void write_codebook(std::ostream& out, const Codebook& book) {
  out.write("SCB1", 4);
  detail::put_u32(out, book.n);
  detail::put_u32(out, book.attribute_count());
  detail::put_u64(out, book.seed);
  for (const auto& spec : book.specs) {
    out.put(spec.kind == CodeSpec::Kind::FixedWeight ? '\0' : '\1');
    detail::put_f64(out, spec.kind == CodeSpec::Kind::FixedWeight
                             ? static_cast<double>(spec.w)
                             : spec.q);
  }
  for (const auto& word : book.words) detail::put_pattern(out, word);
}

inline Codebook read_codebook(std::istream& in) {
  detail::expect_magic(in, "SCB1");
  Codebook book;
  book.n = detail::get_u32(in);
  const std::uint32_t N = detail::get_u32(in);
  book.seed = detail::get_u64(in);
  if (book.n == 0 || N == 0)
    throw FormatError("codebook file: n and N must be >= 1");

  book.specs.reserve(N);
  for (std::uint32_t j = 0; j < N; ++j) {
    int kind = in.get();
    if (kind == std::char_traits<char>::eof())
      throw FormatError("unexpected end of file in codebook specs");
    const double param = detail::get_f64(in);
    if (kind == 0) {
      if (!(param >= 0 && param <= double(book.n)) ||
          param != std::floor(param))
        throw FormatError("codebook file: bad fixed weight at attribute " +
                          std::to_string(j));
      book.specs.push_back(
          CodeSpec::fixed_weight(book.n, static_cast<std::uint32_t>(param)));
    } else if (kind == 1) {
      if (!(param > 0.0 && param < 1.0))
        throw FormatError("codebook file: q out of (0, 1) at attribute " +
                          std::to_string(j));
      book.specs.push_back(CodeSpec::binomial(book.n, param));
    } else {
      throw FormatError("codebook file: unknown spec kind at attribute " +
                        std::to_string(j));
    }
  }
  book.words.reserve(N);
  for (std::uint32_t j = 0; j < N; ++j) {
    auto word = detail::get_pattern(in, book.n);
    if (!(word == codeword_at(book.specs[j], book.seed, j)))
      throw FormatError(
          "codebook file: stored word " + std::to_string(j) +
          " does not regenerate from (seed, spec); file corrupt");
    book.words.push_back(std::move(word));
  }
  if (in.peek() != std::char_traits<char>::eof())
    throw FormatError("codebook file: trailing bytes");
  return book;
}

// --- weight plans (text) -------------------------------------------------------
// Header lines "n=<int>" and "seed=<int>", then one integer weight per line.

struct PlanFile {
  std::uint32_t n = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> weights;
};

inline void write_plan(std::ostream& out, const PlanFile& plan) {
  out << "n=" << plan.n << "\n";
  out << "seed=" << plan.seed << "\n";
  for (auto w : plan.weights) out << w << "\n";
}

inline PlanFile read_plan(std::istream& in) {
  PlanFile plan;
  std::string line;
  if (!std::getline(in, line) || line.rfind("n=", 0) != 0)
    throw FormatError("weight plan must start with n=<int>");
  const long long n = detail::parse_int(line.substr(2), "weight plan header");
  if (n < 1 || n > 0xFFFFFFFFll)
    throw FormatError("weight plan: n out of range");
  plan.n = static_cast<std::uint32_t>(n);
  if (!std::getline(in, line) || line.rfind("seed=", 0) != 0)
    throw FormatError("weight plan: second line must be seed=<int>");
  try {
    std::size_t used = 0;
    plan.seed = std::stoull(line.substr(5), &used);
    if (used != line.size() - 5)
      throw FormatError("weight plan: malformed seed header");
  } catch (const std::logic_error&) {
    throw FormatError("weight plan: malformed seed header");
  }
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string what = "weight plan line " + std::to_string(line_no);
    const long long w = detail::parse_int(line, what);
    if (w < 0 || w > static_cast<long long>(plan.n))
      throw FormatError(what + ": weight out of [0, n]");
    plan.weights.push_back(static_cast<std::uint32_t>(w));
  }
  if (plan.weights.empty())
    throw FormatError("weight plan: no weights");
  return plan;
}

}  // namespace sic::io
