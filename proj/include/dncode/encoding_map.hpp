#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dncode/bitword.hpp"
#include "dncode/code.hpp"

namespace dncode {

inline constexpr int kMaxMapBits = 16;

// GF(2)-linear assignment of b-bit two's-complement patterns to codewords.
//
// table()[k] is the codeword for the pattern whose unsigned value is k; the
// pattern's coordinate 1 (the sign bit) selects basis_images()[0].
class EncodingMap {
 public:
  // Throws std::invalid_argument when an image is not a codeword, the images
  // are dependent, or their count differs from the code dimension.
  static EncodingMap from_basis(BinaryCode code, std::span<const std::uint64_t> basis_images);

  const BinaryCode& code() const noexcept { return code_; }
  int bits() const noexcept { return bits_; }
  int length() const noexcept { return code_.length(); }
  std::span<const std::uint64_t> table() const noexcept { return table_; }
  std::span<const std::uint64_t> basis_images() const noexcept { return basis_; }

  std::int32_t min_value() const noexcept { return -(std::int32_t{1} << (bits_ - 1)); }
  std::int32_t max_value() const noexcept { return (std::int32_t{1} << (bits_ - 1)) - 1; }

  // Throws std::out_of_range outside [min_value, max_value].
  std::uint64_t encode(std::int32_t value) const;
  // Pattern index of `word`, or -1 when it is not in the image.
  std::int64_t pattern_of(std::uint64_t word) const noexcept;

  // Codewords ordered by signed value ascending (-2^(b-1) first).
  std::vector<std::uint64_t> codebook() const;

 private:
  EncodingMap(BinaryCode code, std::vector<std::uint64_t> basis);

  BinaryCode code_;
  int bits_;
  std::vector<std::uint64_t> basis_;
  std::vector<std::uint64_t> table_;
  // Dense inverse over all 2^n words for short codes, else sorted pairs.
  std::vector<std::int32_t> dense_inverse_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> sparse_inverse_;
};

EncodingMap build_from_basis(const BinaryCode& code, std::span<const std::uint64_t> basis_images);

// Heaviest codeword first, then heaviest independent one, ties broken by the
// smaller unsigned value. Requires dimension <= kMaxEnumerableDimension.
std::vector<std::uint64_t> greedy_basis(const BinaryCode& code);

// Table IV basis images for the 4-bit codes (e^(1) .. e^(4)).
inline constexpr std::uint64_t kC7_3Basis[4] = {0x7F, 0x65, 0x17, 0x4B};
inline constexpr std::uint64_t kC8_4Basis[4] = {0xFF, 0x65, 0x17, 0x4B};
inline constexpr std::uint64_t kC9_4Basis[4] = {0x1EF, 0x0BA, 0x07C, 0x01F};

// The 4-bit maps are pinned to the published codebooks. C9_4's published
// codebook spans a (9, 16, 4) code that is not a shortened extended Hamming
// code, so its map carries that span rather than canonical_code(C9_4). The
// 8-bit maps are greedy_basis over canonical_code.
EncodingMap canonical_map(CodeId id);

std::int64_t twos_complement_pattern(std::int32_t value, int bits);
std::int32_t signed_from_pattern(std::uint64_t pattern, int bits);

BitWord encode_value(const EncodingMap& map, std::int32_t value);

struct DetectionReport {
  BitWord word;
  int nearest_distance;
};

using DecodeOutcome = std::variant<std::int32_t, DetectionReport>;

// Non-codewords are reported, never corrected. Throws std::invalid_argument on
// a length mismatch.
DecodeOutcome decode_value(const EncodingMap& map, const BitWord& word);

class DistanceMatrix {
 public:
  DistanceMatrix(int bits, std::vector<std::uint32_t> entries);

  int bits() const noexcept { return bits_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << bits_; }
  // Indexed by signed values.
  std::uint32_t at(std::int32_t row, std::int32_t column) const;
  std::span<const std::uint32_t> entries() const noexcept { return entries_; }

 private:
  int bits_;
  std::vector<std::uint32_t> entries_;
};

inline constexpr int kMaxMatrixBits = 12;

DistanceMatrix distance_matrix(const EncodingMap& map);

// Signed-value labels, ascending.
std::vector<std::int32_t> value_labels(int bits);

// "table": space-aligned with a header row and '-' on the diagonal.
// "csv": header row then one row per value, diagonal 0.
std::string format_matrix(const DistanceMatrix& matrix, std::string_view format);

}  // namespace dncode
