#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "trex/util.hpp"

namespace trex {

// Fixed-length bit string, word-packed. One bit-order convention throughout:
// index 0 is the least significant bit of any integer rendering, and bit i of
// a serialized byte stream lives at bit (i mod 8) of byte floor(i/8).
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t len) : len_(len), words_(word_count(len), 0) {}

  /// Low `len` bits of `value`, bit 0 = LSB. Requires len <= 64.
  static BitString from_uint(std::uint64_t value, std::size_t len) {
    if (len > 64) throw std::invalid_argument("from_uint: len > 64");
    if (len < 64 && (value >> len) != 0)
      throw std::invalid_argument("from_uint: value wider than len");
    BitString b(len);
    if (len > 0) b.words_[0] = value;
    return b;
  }

  /// Parse a string of '0'/'1' where the leftmost character is bit 0.
  static BitString from_string(const std::string& s) {
    BitString b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        b.set(i, 1);
      else if (s[i] != '0')
        throw std::invalid_argument("from_string: non-binary character");
    }
    return b;
  }

  /// First `len` bits of `bytes`, LSB-first within each byte.
  static BitString from_bytes(const std::vector<std::uint8_t>& bytes,
                              std::size_t len) {
    if (len > bytes.size() * 8)
      throw std::invalid_argument("from_bytes: not enough bytes");
    BitString b(len);
    for (std::size_t i = 0; i < word_count(len); ++i) {
      std::uint64_t w = 0;
      for (std::size_t j = 0; j < 8; ++j) {
        const std::size_t byte = i * 8 + j;
        if (byte < bytes.size())
          w |= static_cast<std::uint64_t>(bytes[byte]) << (8 * j);
      }
      b.words_[i] = w;
    }
    b.mask_tail();
    return b;
  }

  std::size_t size() const { return len_; }

  int get(std::size_t i) const {
    check_index(i);
    return static_cast<int>((words_[i >> 6] >> (i & 63)) & 1);
  }

  void set(std::size_t i, int bit) {
    check_index(i);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (bit)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  /// Render as integer; requires len <= 64.
  std::uint64_t to_uint() const {
    if (len_ > 64) throw std::logic_error("to_uint: len > 64");
    return len_ == 0 ? 0 : words_[0];
  }

  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  std::vector<std::uint8_t> to_bytes() const {
    std::vector<std::uint8_t> out((len_ + 7) / 8, 0);
    for (std::size_t b = 0; b < out.size(); ++b)
      out[b] = static_cast<std::uint8_t>(words_[b >> 3] >> (8 * (b & 7)));
    return out;
  }

  /// Bits at the given positions, in the given order.
  BitString select(const std::vector<std::uint32_t>& positions) const {
    BitString out(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
      out.set(i, get(positions[i]));
    return out;
  }

  /// Contiguous slice [from, from+count).
  BitString slice(std::size_t from, std::size_t count) const {
    if (from + count > len_) throw std::out_of_range("slice out of range");
    BitString out(count);
    for (std::size_t i = 0; i < count; ++i) out.set(i, get(from + i));
    return out;
  }

  BitString concat(const BitString& other) const {
    BitString out(len_ + other.len_);
    for (std::size_t i = 0; i < len_; ++i) out.set(i, get(i));
    for (std::size_t i = 0; i < other.len_; ++i)
      out.set(len_ + i, other.get(i));
    return out;
  }

  friend BitString operator^(const BitString& a, const BitString& b) {
    if (a.len_ != b.len_)
      throw std::invalid_argument("xor: length mismatch");
    BitString out(a.len_);
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      out.words_[i] = a.words_[i] ^ b.words_[i];
    return out;
  }

  int parity() const {
    std::uint64_t acc = 0;
    for (auto w : words_) acc ^= w;
    return parity64(acc);
  }

  std::size_t count_ones() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.len_ == b.len_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BitString& a, const BitString& b) {
    return !(a == b);
  }
  friend bool operator<(const BitString& a, const BitString& b) {
    if (a.len_ != b.len_) return a.len_ < b.len_;
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  static std::size_t word_count(std::size_t len) { return (len + 63) / 64; }

  void check_index(std::size_t i) const {
    if (i >= len_) throw std::out_of_range("bit index out of range");
  }

  void mask_tail() {
    const std::size_t rem = len_ & 63;
    if (rem != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << rem) - 1;
  }

  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Sum a_i b_i mod 2. Lengths must match.
inline int inner_product_mod2(const BitString& a, const BitString& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("inner_product_mod2: length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i)
    acc ^= a.words()[i] & b.words()[i];
  return parity64(acc);
}

}  // namespace trex
