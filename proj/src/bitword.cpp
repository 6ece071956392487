#include "dncode/bitword.hpp"

#include <stdexcept>

namespace dncode {

namespace {

void check_length(int length) {
  if (length < 1 || length > kMaxWordLength)
    throw std::invalid_argument("word length must be in [1, 64], got " + std::to_string(length));
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitWord::BitWord(int length, std::uint64_t value) {
  check_length(length);
  if ((value & ~low_mask(length)) != 0)
    throw std::invalid_argument("value does not fit in " + std::to_string(length) + " bits");
  length_ = static_cast<std::uint8_t>(length);
  value_ = value;
}

BitWord BitWord::unit(int length, int coordinate) {
  check_length(length);
  if (coordinate < 1 || coordinate > length)
    throw std::invalid_argument("coordinate out of range");
  return BitWord(length, std::uint64_t{1} << coordinate_shift(length, coordinate));
}

BitWord BitWord::from_string(std::string_view bits) {
  check_length(static_cast<int>(bits.size()));
  std::uint64_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may only contain 0 and 1");
    value = (value << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return BitWord(static_cast<int>(bits.size()), value);
}

BitWord BitWord::from_hex(std::string_view hex, int length) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty() || hex.size() > 16) throw std::invalid_argument("bad hex word");
  std::uint64_t value = 0;
  for (char c : hex) {
    const int d = hex_digit(c);
    if (d < 0) throw std::invalid_argument("bad hex digit in '" + std::string(hex) + "'");
    value = (value << 4) | static_cast<std::uint64_t>(d);
  }
  return BitWord(length, value);
}

bool BitWord::bit(int coordinate) const {
  if (coordinate < 1 || coordinate > length_) throw std::out_of_range("coordinate out of range");
  return (value_ >> coordinate_shift(length_, coordinate)) & 1U;
}

BitWord BitWord::with_flipped(int coordinate) const {
  return *this ^ unit(length_, coordinate);
}

BitWord BitWord::operator^(const BitWord& other) const {
  BitWord out = *this;
  out ^= other;
  return out;
}

BitWord& BitWord::operator^=(const BitWord& other) {
  if (other.length_ != length_) throw std::invalid_argument("word length mismatch");
  value_ ^= other.value_;
  return *this;
}

std::string BitWord::to_string() const {
  std::string out(length_, '0');
  for (int i = 0; i < length_; ++i)
    if (bit(i + 1)) out[static_cast<std::size_t>(i)] = '1';
  return out;
}

std::string BitWord::to_hex() const { return dncode::to_hex(value_, length_); }

std::string to_hex(std::uint64_t value, int length) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  const int digits = (length + 3) / 4;
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = digits - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xF];
    value >>= 4;
  }
  return out;
}

int hamming_distance(const BitWord& u, const BitWord& v) {
  if (u.length() != v.length())
    throw std::invalid_argument("hamming_distance: lengths " + std::to_string(u.length()) +
                                " and " + std::to_string(v.length()) + " differ");
  return std::popcount(u.value() ^ v.value());
}

}  // namespace dncode
