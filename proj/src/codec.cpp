#include "thunt/codec.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>

namespace thunt::codec {

namespace {

constexpr int kMaxMagnitudeBits = 62;

std::uint64_t magnitude(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

std::uint64_t low_mask(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

// Byte b, most significant bit first, as eight pairs b_i, !b_i read least
// significant first.
constexpr auto kExpand = [] {
  std::array<std::uint16_t, 256> t{};
  for (unsigned b = 0; b < 256; ++b) {
    for (unsigned k = 0; k < 8; ++k) {
      const unsigned bit = (b >> (7 - k)) & 1U;
      t[b] = static_cast<std::uint16_t>(t[b] | ((bit ? 1U : 2U) << (2 * k)));
    }
  }
  return t;
}();

// Four pairs back to four magnitude bits, most significant first; -1 when a
// pair is 00 or 11.
constexpr auto kContract = [] {
  std::array<std::int8_t, 256> t{};
  for (unsigned b = 0; b < 256; ++b) {
    int v = 0;
    for (unsigned k = 0; k < 4 && v >= 0; ++k) {
      const unsigned pair = (b >> (2 * k)) & 3U;
      v = pair == 1 ? (v << 1) | 1 : pair == 2 ? v << 1 : -1;
    }
    t[b] = static_cast<std::int8_t>(v);
  }
  return t;
}();

void append_payload(AdviceString& out, std::uint64_t value) {
  unsigned width = static_cast<unsigned>(std::bit_width(value));
  unsigned n = width % 8 == 0 ? 8 : width % 8;
  while (width > 0) {
    const unsigned byte = static_cast<unsigned>((value >> (width - n)) & low_mask(n)) << (8 - n);
    out.append_bits(kExpand[byte], 2 * n);
    width -= n;
    n = 8;
  }
}

void append_separator(AdviceString& out) { out.append_bits(0, 3); }

[[noreturn]] void payload_error(int which, const char* what) {
  throw DecodeError("payload " + std::to_string(which) + " " + what);
}

// Contracts 10 -> 1 and 01 -> 0 over bits [begin, end).
std::uint64_t read_payload(const AdviceString& bits, std::size_t begin, std::size_t end,
                           int which) {
  if (begin >= end) payload_error(which, "is empty");
  if ((end - begin) % 2 != 0) payload_error(which, "has odd length");
  if ((end - begin) / 2 > kMaxMagnitudeBits) payload_error(which, "is too long");
  std::uint64_t value = 0;
  std::uint64_t word = 0;
  for (std::size_t pos = begin; pos < end; pos += 8) {
    if ((pos - begin) % 64 == 0) word = bits.bits_at(pos);
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(end - pos, 8) / 2);
    // pad short tails with 01 pairs, which contract to trailing zeros
    const auto kept = static_cast<unsigned>(low_mask(2 * n));
    const unsigned byte = (static_cast<unsigned>(word) & kept) | (0xAAU & ~kept);
    word >>= 8;
    const int v = kContract[byte & 0xFFU];
    if (v < 0) payload_error(which, "contains a pair other than 10/01");
    value = (value << n) | (static_cast<unsigned>(v) >> (4 - n));
  }
  if (value == 0) payload_error(which, "has zero magnitude");
  if (!bits.bit(begin)) payload_error(which, "has a leading zero");
  return value;
}

}  // namespace

void AdviceString::append_bits(std::uint64_t chunk, unsigned count) {
  if (count == 0) return;
  if (count > 64 || size_ + count > kMaxBits) throw DecodeError("advice is longer than any codeword");
  if (count < 64) chunk &= (std::uint64_t{1} << count) - 1;
  const unsigned offset = size_ & 63;
  words_[size_ >> 6] |= chunk << offset;
  if (offset + count > 64) words_[(size_ >> 6) + 1] |= chunk >> (64 - offset);
  size_ += count;
}

std::uint64_t AdviceString::bits_at(std::size_t pos) const {
  if (pos >= size_) return 0;
  const std::size_t w = pos >> 6;
  const unsigned offset = pos & 63;
  std::uint64_t out = words_[w] >> offset;
  if (offset != 0 && w + 1 < words_.size()) out |= words_[w + 1] << (64 - offset);
  return out;
}

AdviceString AdviceString::from_text(std::string_view text) {
  AdviceString out;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw DecodeError("advice text may only contain 0 and 1");
    out.push_back(ch == '1');
  }
  return out;
}

AdviceString AdviceString::unpack(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4) throw DecodeError("packed advice is missing its length prefix");
  std::uint32_t count = 0;
  for (int i = 0; i < 4; ++i) count = (count << 8) | bytes[static_cast<std::size_t>(i)];
  const std::size_t body = (static_cast<std::size_t>(count) + 7) / 8;
  if (bytes.size() != 4 + body) throw DecodeError("packed advice length does not match prefix");
  AdviceString out;
  for (std::size_t i = 0; i < count; ++i) out.push_back((bytes[4 + i / 8] >> (7 - i % 8)) & 1U);
  return out;
}

std::string AdviceString::to_text() const {
  std::string out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(bit(i) ? '1' : '0');
  return out;
}

std::vector<std::uint8_t> AdviceString::pack() const {
  const auto count = static_cast<std::uint32_t>(size_);
  std::vector<std::uint8_t> out{static_cast<std::uint8_t>(count >> 24),
                                static_cast<std::uint8_t>(count >> 16),
                                static_cast<std::uint8_t>(count >> 8),
                                static_cast<std::uint8_t>(count)};
  out.resize(4 + (size_ + 7) / 8, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    if (bit(i)) out[4 + i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

std::size_t encoded_length(const AdviceTriple& t) {
  return 8 + 2 * static_cast<std::size_t>(std::bit_width(magnitude(t.a1)) +
                                          std::bit_width(magnitude(t.a2)) +
                                          std::bit_width(magnitude(t.a3)));
}

AdviceString encode(const AdviceTriple& t) {
  if (t.a1 <= 0) throw std::invalid_argument("a1 must be positive");
  if (t.a2 == 0 || t.a3 == 0) throw std::invalid_argument("a2 and a3 must be nonzero");
  for (const std::int64_t a : {t.a1, t.a2, t.a3}) {
    if (std::bit_width(magnitude(a)) > kMaxMagnitudeBits) {
      throw std::invalid_argument("magnitude needs more than 62 bits");
    }
  }
  AdviceString bits;
  bits.append_bits((t.a2 > 0 ? 1U : 0U) | (t.a3 > 0 ? 2U : 0U), 2);
  append_payload(bits, magnitude(t.a1));
  append_separator(bits);
  append_payload(bits, magnitude(t.a2));
  append_separator(bits);
  append_payload(bits, magnitude(t.a3));
  return bits;
}

AdviceTriple decode(const AdviceString& s) {
  const AdviceString& bits = s;
  if (bits.size() < 2) throw DecodeError("advice is shorter than its sign bits");

  // A separator is the last three zeros of a zero run; runs of 5 or more are
  // never produced. Scanned 60 positions at a time so every position sees the
  // four bits after it.
  std::size_t separators[2] = {0, 0};
  std::size_t found = 0;
  for (std::size_t pos = 0; pos < bits.size(); pos += 60) {
    const std::size_t left = bits.size() - pos;
    const std::uint64_t valid = left >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << left) - 1;
    const std::uint64_t z = ~bits.bits_at(pos) & valid;
    const std::uint64_t window = (std::uint64_t{1} << 60) - 1;
    const std::uint64_t three = z & (z >> 1) & (z >> 2);
    if (three & (z >> 3) & (z >> 4) & window) throw DecodeError("zero run of length 5 or more");
    std::uint64_t ends = three & ~(z >> 3) & window;
    while (ends) {
      if (found < 2) separators[found] = pos + static_cast<std::size_t>(std::countr_zero(ends));
      ++found;
      ends &= ends - 1;
    }
  }
  if (found != 2) {
    throw DecodeError("expected 2 separators, found " + std::to_string(found));
  }
  if (separators[0] < 2) throw DecodeError("separator overlaps the sign bits");

  const std::int64_t d1 =
      static_cast<std::int64_t>(read_payload(bits, 2, separators[0], 1));
  std::int64_t d2 =
      static_cast<std::int64_t>(read_payload(bits, separators[0] + 3, separators[1], 2));
  std::int64_t d3 =
      static_cast<std::int64_t>(read_payload(bits, separators[1] + 3, bits.size(), 3));
  if (!bits.bit(0)) d2 = -d2;
  if (!bits.bit(1)) d3 = -d3;
  return {d1, d2, d3};
}

}  // namespace thunt::codec
