#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dncode/bitword.hpp"

namespace dncode {

// An arbitrary (not necessarily linear) binary code: a sorted set of distinct
// words of one length.
class WordSet {
 public:
  WordSet(int length, std::vector<std::uint64_t> words);
  static WordSet from_strings(std::span<const std::string_view> words);

  int length() const noexcept { return length_; }
  std::size_t size() const noexcept { return words_.size(); }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  bool contains(std::uint64_t word) const;

  friend bool operator==(const WordSet&, const WordSet&) = default;

 private:
  int length_;
  std::vector<std::uint64_t> words_;
};

// Pairwise minimum distance. Throws std::invalid_argument for fewer than two
// codewords.
int min_distance(const WordSet& code);

// Keeps the words that are 0 at every listed (1-based, original) coordinate
// and deletes those coordinates.
WordSet shorten(const WordSet& code, std::span<const int> positions);

// Largest dimension for which codewords() materializes the full list.
inline constexpr int kMaxEnumerableDimension = 20;
// Exact distances stream over the code (dimension <= 26) or over its dual
// (redundancy <= 26, via the MacWilliams identity).
inline constexpr int kMaxDistanceScanDimension = 26;

// Linear [n, b] code over GF(2), 1 <= n <= 64, 0 <= b < 64.
//
// Immutable once built. The generator rows are kept as supplied; the
// parity-check matrix and the exact minimum distance are computed at
// construction.
class BinaryCode {
 public:
  // Throws std::invalid_argument when the rows are dependent or do not fit in
  // `length` bits, std::length_error when both the dimension and the
  // redundancy exceed kMaxDistanceScanDimension.
  BinaryCode(int length, std::vector<std::uint64_t> generator);

  // GF(2)-span of arbitrary words; dependent rows are dropped.
  static BinaryCode span_of(int length, std::span<const std::uint64_t> words);

  int length() const noexcept { return length_; }
  int dimension() const noexcept { return static_cast<int>(generator_.size()); }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << dimension(); }
  std::span<const std::uint64_t> generator() const noexcept { return generator_; }
  // (n - b) rows h with <h, c> = 0 for every codeword c.
  std::span<const std::uint64_t> parity_check() const noexcept { return parity_check_; }

  // Empty only for the zero code {0}.
  std::optional<int> certified_min_distance() const noexcept { return min_distance_; }

  bool contains(std::uint64_t word) const noexcept;
  bool contains(const BitWord& word) const;

  // XOR of generator rows selected by `message`; generator row 0 pairs with
  // the most significant of the b message bits.
  std::uint64_t encode_message(std::uint64_t message) const noexcept;

  // All 2^b codewords in message order. Throws std::length_error above
  // kMaxEnumerableDimension.
  std::vector<std::uint64_t> codewords() const;
  WordSet word_set() const;

  bool same_codewords(const BinaryCode& other) const;

 private:
  int length_;
  std::vector<std::uint64_t> generator_;
  std::vector<std::uint64_t> parity_check_;
  std::optional<int> min_distance_;
};

// Minimum nonzero codeword weight. Throws std::invalid_argument for the zero
// code.
int min_distance(const BinaryCode& code);

// Weight distribution A_0..A_n, by direct enumeration of the codewords.
std::vector<std::uint64_t> weight_distribution(const BinaryCode& code);

// Dual route: enumerates the dual code and recovers the weight distribution
// through the MacWilliams identity. Exposed so both routes can be compared.
std::vector<std::uint64_t> weight_distribution_via_dual(const BinaryCode& code);
int min_distance_via_dual(const BinaryCode& code);

// Rank over GF(2) of a set of words.
int gf2_rank(std::span<const std::uint64_t> rows);

// Frozen parity-check column order for construct_hamming(3).
inline constexpr std::uint64_t kHamming7Columns[7] = {1, 2, 4, 3, 6, 7, 5};

// (2^r - 1, 2^(2^r - r - 1), 3) Hamming code, 2 <= r <= 6.
BinaryCode construct_hamming(int r);

// Prepends the overall parity bit as coordinate 1.
BinaryCode extend_code(const BinaryCode& code);

// Shortening at 1-based coordinates of the original code, highest first.
BinaryCode shorten_code(const BinaryCode& code, std::span<const int> positions);

// Positions {n - k + 1, ..., n}.
std::vector<int> last_positions(int length, int count);

inline constexpr std::uint64_t kDefaultSubcodeSeed = 0x444E434F44453134ULL;

// Random dim-dimensional subspace: nonzero codewords are drawn uniformly with
// a seeded generator, dependent picks are rejected.
BinaryCode linear_subcode(const BinaryCode& code, int dim,
                          std::uint64_t seed = kDefaultSubcodeSeed);

// Identifiers of the catalogued protection codes.
enum class CodeId { C7_3, C8_4, C9_4, C12_3, C13_4, C14_4 };

inline constexpr CodeId kAllCodeIds[] = {CodeId::C7_3,  CodeId::C8_4,  CodeId::C9_4,
                                         CodeId::C12_3, CodeId::C13_4, CodeId::C14_4};

std::string_view to_string(CodeId id);
// Throws std::invalid_argument for unknown names.
CodeId parse_code_id(std::string_view name);

struct CodeParameters {
  int length;
  int bits;  // log2 of the code size
  int distance;
};

CodeParameters catalogued_parameters(CodeId id);

// Builds the catalogued construction:
//   C7_3  Hamming r=3           C12_3 Hamming r=4 shortened at last 3
//   C8_4  extended Hamming r=3  C13_4 extended Hamming r=4 shortened at last 3
//   C9_4  extended Hamming r=4 shortened at last 7
//   C14_4 random 8-dim subcode of extended Hamming r=4 shortened at last 2
BinaryCode canonical_code(CodeId id);

}  // namespace dncode
