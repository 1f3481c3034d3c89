#pragma once

// Self-delimiting binary code for the advice triple (a1, a2, a3).
//
// Layout: xi2 xi3 beta1 000 beta2 000 beta3, where xi_i is the sign bit of a_i
// (1 for positive) and beta_i is the most-significant-first binary form of
// |a_i| with every 1 written as 10 and every 0 as 01.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thunt::codec {

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AdviceTriple {
  std::int64_t a1 = 1;
  std::int64_t a2 = 1;
  std::int64_t a3 = 1;

  friend bool operator==(const AdviceTriple&, const AdviceTriple&) = default;
};

class AdviceString {
 public:
  AdviceString() = default;

  /// Parses the ASCII form; throws DecodeError on characters other than 0/1.
  static AdviceString from_text(std::string_view text);

  /// Packed form: 4-byte big-endian bit count followed by the bits,
  /// most significant bit of each byte first, zero padded.
  static AdviceString unpack(const std::vector<std::uint8_t>& bytes);

  std::string to_text() const;
  std::vector<std::uint8_t> pack() const;

  bool bit(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  /// 64 bits starting at `pos`, least significant first; zero past the end.
  std::uint64_t bits_at(std::size_t pos) const;
  std::size_t size() const { return size_; }
  void push_back(bool b) { append_bits(b ? 1U : 0U, 1); }
  /// Appends the low `count` bits of `chunk`, least significant first.
  void append_bits(std::uint64_t chunk, unsigned count);

  /// Longest codeword: 62-bit magnitudes in all three fields.
  static constexpr std::size_t kMaxBits = 380;

  friend bool operator==(const AdviceString&, const AdviceString&) = default;

 private:
  // Bit i lives at position i % 64 of word i / 64; bits past size_ are zero.
  std::array<std::uint64_t, (kMaxBits + 63) / 64> words_{};
  std::size_t size_ = 0;
};

/// Throws std::invalid_argument when a1 <= 0, a2 or a3 is zero, or a
/// magnitude needs more than 62 bits.
AdviceString encode(const AdviceTriple& t);

/// Inverse of encode. Rejects anything encode cannot produce.
AdviceTriple decode(const AdviceString& s);

/// Number of bits encode emits for t.
std::size_t encoded_length(const AdviceTriple& t);

}  // namespace thunt::codec
