#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace dncode {

inline constexpr int kMaxWordLength = 64;

// Mask with the low `n` bits set (n in [0, 64]).
constexpr std::uint64_t low_mask(int n) noexcept {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

// Fixed-length binary string of length 1..64.
//
// Coordinate 1 is the leftmost bit and lives in the most significant used bit
// of the packed value, so `value()` reads the string as an unsigned integer
// MSB-first ("1111111" -> 0x7F).
class BitWord {
 public:
  BitWord(int length, std::uint64_t value);

  static BitWord zero(int length) { return BitWord(length, 0); }
  // e^(i): a single 1 at 1-based coordinate `coordinate`.
  static BitWord unit(int length, int coordinate);
  static BitWord from_string(std::string_view bits);
  static BitWord from_hex(std::string_view hex, int length);

  int length() const noexcept { return length_; }
  std::uint64_t value() const noexcept { return value_; }
  int weight() const noexcept { return std::popcount(value_); }

  // 1-based coordinate access.
  bool bit(int coordinate) const;
  BitWord with_flipped(int coordinate) const;

  BitWord operator^(const BitWord& other) const;
  BitWord& operator^=(const BitWord& other);
  friend bool operator==(const BitWord&, const BitWord&) = default;

  std::string to_string() const;
  // Zero-padded to ceil(length / 4) hex digits, upper case.
  std::string to_hex() const;

 private:
  std::uint8_t length_;
  std::uint64_t value_;
};

// Number of coordinates where u and v differ. Throws std::invalid_argument on
// a length mismatch.
int hamming_distance(const BitWord& u, const BitWord& v);

std::string to_hex(std::uint64_t value, int length);

// Bit position (0 = LSB) of 1-based coordinate `coordinate` in a length-n word.
constexpr int coordinate_shift(int length, int coordinate) noexcept {
  return length - coordinate;
}

}  // namespace dncode
