#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "clique/errors.hpp"

namespace clique {

// Big-endian bit string: element 0 is the most significant bit.
using BitVector = std::vector<bool>;

// ceil(log2(n)) for n >= 1; the per-message bandwidth of an n-node clique.
constexpr std::size_t ceil_log2(std::uint64_t n) {
  std::size_t bits = 0;
  std::uint64_t reach = 1;
  while (reach < n) {
    reach <<= 1;
    ++bits;
  }
  return bits;
}

constexpr std::size_t bandwidth(std::size_t n) { return ceil_log2(n); }

inline BitVector to_bits(std::uint64_t value, std::size_t width) {
  BitVector out(width);
  for (std::size_t i = 0; i < width; ++i) out[width - 1 - i] = (i < 64) && ((value >> i) & 1U);
  return out;
}

inline std::uint64_t from_bits(const BitVector& bits, std::size_t offset, std::size_t width) {
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < width; ++i) value = (value << 1) | (bits.at(offset + i) ? 1U : 0U);
  return value;
}

inline std::uint64_t from_bits(const BitVector& bits) { return from_bits(bits, 0, bits.size()); }

// Node ids 1..n travel as (id - 1) in exactly ceil_log2(n) bits.
inline BitVector encode_id(NodeId id, std::size_t n) { return to_bits(id - 1, bandwidth(n)); }

inline NodeId decode_id(const BitVector& bits, std::size_t n) {
  if (bits.size() != bandwidth(n)) throw FormatError("node id payload has wrong width");
  const auto id = static_cast<NodeId>(from_bits(bits) + 1);
  if (id > n) throw FormatError("node id payload out of range");
  return id;
}

inline void append(BitVector& dst, const BitVector& src) { dst.insert(dst.end(), src.begin(), src.end()); }

inline BitVector slice(const BitVector& bits, std::size_t offset, std::size_t len) {
  if (offset + len > bits.size()) throw FormatError("bit slice out of range");
  return BitVector(bits.begin() + static_cast<std::ptrdiff_t>(offset),
                   bits.begin() + static_cast<std::ptrdiff_t>(offset + len));
}

// Splits bits into ceil(size / width) chunks; the last chunk may be short.
inline std::vector<BitVector> chunk(const BitVector& bits, std::size_t width) {
  std::vector<BitVector> out;
  if (width == 0) return out;
  for (std::size_t off = 0; off < bits.size(); off += width)
    out.push_back(slice(bits, off, std::min(width, bits.size() - off)));
  return out;
}

// Self-delimiting fixed-width frame: payload, a 1 marker, zero padding.
inline BitVector frame(const BitVector& payload, std::size_t width) {
  if (payload.size() + 1 > width) throw FormatError("payload does not fit frame");
  BitVector out = payload;
  out.push_back(true);
  out.resize(width, false);
  return out;
}

inline BitVector unframe(const BitVector& framed) {
  std::size_t end = framed.size();
  while (end > 0 && !framed[end - 1]) --end;
  if (end == 0) throw FormatError("frame without marker");
  return slice(framed, 0, end - 1);
}

inline std::string to_string(const BitVector& bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

inline BitVector bits_from_string(std::string_view s) {
  BitVector out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw FormatError("bit string contains '" + std::string(1, c) + "'");
    out.push_back(c == '1');
  }
  return out;
}

// Hex digits of the bits, left aligned and zero padded to a multiple of four.
inline std::string to_hex(const BitVector& bits) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  for (std::size_t off = 0; off < bits.size(); off += 4) {
    unsigned v = 0;
    for (std::size_t i = 0; i < 4; ++i) v = (v << 1) | ((off + i < bits.size() && bits[off + i]) ? 1U : 0U);
    s.push_back(digits[v]);
  }
  return s;
}

inline BitVector from_hex(std::string_view hex, std::size_t bit_length) {
  if (bit_length > hex.size() * 4 || (hex.size() * 4) - bit_length >= 4)
    throw FormatError("hex string '" + std::string(hex) + "' does not hold " + std::to_string(bit_length) + " bits");
  BitVector out;
  for (char c : hex) {
    unsigned v;
    if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
    else throw FormatError("invalid hex digit '" + std::string(1, c) + "'");
    for (int i = 3; i >= 0; --i) out.push_back((v >> i) & 1U);
  }
  for (std::size_t i = bit_length; i < out.size(); ++i)
    if (out[i]) throw FormatError("nonzero padding in hex label");
  out.resize(bit_length);
  return out;
}

}  // namespace clique
