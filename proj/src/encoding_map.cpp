#include "dncode/encoding_map.hpp"

#include <algorithm>
#include <bit>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dncode/kernels.hpp"

namespace dncode {

namespace {

// Dense inverse lookups are used up to this code length (2^n int32 entries).
constexpr int kDenseInverseMaxLength = 20;

}  // namespace

EncodingMap::EncodingMap(BinaryCode code, std::vector<std::uint64_t> basis)
    : code_(std::move(code)), bits_(static_cast<int>(basis.size())), basis_(std::move(basis)) {
  const std::size_t entries = std::size_t{1} << bits_;
  table_.resize(entries);
  // Gray-code walk: each step toggles one pattern bit, i.e. one basis image.
  std::uint64_t pattern = 0;
  std::uint64_t word = 0;
  table_[0] = 0;
  for (std::size_t step = 1; step < entries; ++step) {
    const int bit = std::countr_zero(step);
    pattern ^= std::uint64_t{1} << bit;
    word ^= basis_[static_cast<std::size_t>(bits_ - 1 - bit)];
    table_[pattern] = word;
  }

  if (code_.length() <= kDenseInverseMaxLength) {
    dense_inverse_.assign(std::size_t{1} << code_.length(), -1);
    for (std::size_t k = 0; k < entries; ++k) dense_inverse_[table_[k]] = static_cast<std::int32_t>(k);
  } else {
    sparse_inverse_.reserve(entries);
    for (std::size_t k = 0; k < entries; ++k) sparse_inverse_.emplace_back(table_[k], static_cast<std::uint32_t>(k));
    std::sort(sparse_inverse_.begin(), sparse_inverse_.end());
  }
}

EncodingMap EncodingMap::from_basis(BinaryCode code, std::span<const std::uint64_t> basis_images) {
  const int b = code.dimension();
  if (b < 1 || b > kMaxMapBits)
    throw std::invalid_argument("encoding maps need a code of dimension 1.." + std::to_string(kMaxMapBits));
  if (static_cast<int>(basis_images.size()) != b)
    throw std::invalid_argument("expected " + std::to_string(b) + " basis images, got " +
                                std::to_string(basis_images.size()));
  for (std::size_t i = 0; i < basis_images.size(); ++i)
    if (!code.contains(basis_images[i]))
      throw std::invalid_argument("basis image " + std::to_string(i + 1) + " (" +
                                  to_hex(basis_images[i], code.length()) + ") is not a codeword");
  if (gf2_rank(basis_images) != b) throw std::invalid_argument("basis images are linearly dependent");
  return EncodingMap(std::move(code), std::vector<std::uint64_t>(basis_images.begin(), basis_images.end()));
}

std::uint64_t EncodingMap::encode(std::int32_t value) const {
  if (value < min_value() || value > max_value())
    throw std::out_of_range("value " + std::to_string(value) + " outside [" + std::to_string(min_value()) + ", " +
                            std::to_string(max_value()) + "]");
  return table_[static_cast<std::size_t>(twos_complement_pattern(value, bits_))];
}

std::int64_t EncodingMap::pattern_of(std::uint64_t word) const noexcept {
  if (!dense_inverse_.empty()) {
    if (word >= dense_inverse_.size()) return -1;
    return dense_inverse_[word];
  }
  auto it = std::lower_bound(sparse_inverse_.begin(), sparse_inverse_.end(), std::make_pair(word, std::uint32_t{0}));
  if (it == sparse_inverse_.end() || it->first != word) return -1;
  return it->second;
}

std::vector<std::uint64_t> EncodingMap::codebook() const {
  std::vector<std::uint64_t> out;
  out.reserve(table_.size());
  for (std::int32_t v = min_value(); v <= max_value(); ++v) out.push_back(encode(v));
  return out;
}

EncodingMap build_from_basis(const BinaryCode& code, std::span<const std::uint64_t> basis_images) {
  return EncodingMap::from_basis(code, basis_images);
}

std::vector<std::uint64_t> greedy_basis(const BinaryCode& code) {
  std::vector<std::uint64_t> words = code.codewords();
  std::sort(words.begin(), words.end(), [](std::uint64_t a, std::uint64_t b) {
    const int wa = std::popcount(a), wb = std::popcount(b);
    return wa != wb ? wa > wb : a < b;
  });
  std::vector<std::uint64_t> chosen;
  for (std::uint64_t w : words) {
    if (static_cast<int>(chosen.size()) == code.dimension()) break;
    if (w == 0) continue;
    chosen.push_back(w);
    if (gf2_rank(chosen) != static_cast<int>(chosen.size())) chosen.pop_back();
  }
  return chosen;
}

EncodingMap canonical_map(CodeId id) {
  switch (id) {
    case CodeId::C7_3: return EncodingMap::from_basis(canonical_code(id), kC7_3Basis);
    case CodeId::C8_4: return EncodingMap::from_basis(canonical_code(id), kC8_4Basis);
    case CodeId::C9_4: return EncodingMap::from_basis(BinaryCode::span_of(9, kC9_4Basis), kC9_4Basis);
    case CodeId::C12_3:
    case CodeId::C13_4:
    case CodeId::C14_4: {
      BinaryCode code = canonical_code(id);
      const std::vector<std::uint64_t> basis = greedy_basis(code);
      return EncodingMap::from_basis(std::move(code), basis);
    }
  }
  throw std::invalid_argument("unknown code id");
}

std::int64_t twos_complement_pattern(std::int32_t value, int bits) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(static_cast<std::int64_t>(value)) & low_mask(bits));
}

std::int32_t signed_from_pattern(std::uint64_t pattern, int bits) {
  const std::uint64_t sign = std::uint64_t{1} << (bits - 1);
  return static_cast<std::int32_t>(static_cast<std::int64_t>(pattern & (sign - 1)) -
                                   static_cast<std::int64_t>(pattern & sign));
}

BitWord encode_value(const EncodingMap& map, std::int32_t value) {
  return BitWord(map.length(), map.encode(value));
}

DecodeOutcome decode_value(const EncodingMap& map, const BitWord& word) {
  if (word.length() != map.length())
    throw std::invalid_argument("word has length " + std::to_string(word.length()) + ", map expects " +
                                std::to_string(map.length()));
  const std::int64_t pattern = map.pattern_of(word.value());
  if (pattern >= 0) return signed_from_pattern(static_cast<std::uint64_t>(pattern), map.bits());
  const auto nearest = kernels::active().min_xor_popcount(word.value(), map.table());
  return DetectionReport{word, static_cast<int>(nearest)};
}

// ---------------------------------------------------------- DistanceMatrix

DistanceMatrix::DistanceMatrix(int bits, std::vector<std::uint32_t> entries)
    : bits_(bits), entries_(std::move(entries)) {
  if (bits < 1 || bits > kMaxMatrixBits) throw std::invalid_argument("distance matrix bit width out of range");
  if (entries_.size() != dimension() * dimension()) throw std::invalid_argument("distance matrix size mismatch");
}

std::uint32_t DistanceMatrix::at(std::int32_t row, std::int32_t column) const {
  const std::int32_t lo = -(std::int32_t{1} << (bits_ - 1));
  const std::int32_t hi = -lo - 1;
  if (row < lo || row > hi || column < lo || column > hi) throw std::out_of_range("distance matrix index");
  return entries_[static_cast<std::size_t>(row - lo) * dimension() + static_cast<std::size_t>(column - lo)];
}

DistanceMatrix distance_matrix(const EncodingMap& map) {
  const int b = map.bits();
  if (b > kMaxMatrixBits) throw std::invalid_argument("distance matrix limited to 12-bit maps");
  const std::vector<std::uint64_t> ordered = map.codebook();
  const std::size_t dim = ordered.size();
  std::vector<std::uint32_t> entries(dim * dim);
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < dim; ++i)
    k.xor_popcount(ordered[i], ordered, std::span<std::uint32_t>(entries).subspan(i * dim, dim));
  return DistanceMatrix(b, std::move(entries));
}

std::vector<std::int32_t> value_labels(int bits) {
  std::vector<std::int32_t> out;
  for (std::int32_t v = -(1 << (bits - 1)); v < (1 << (bits - 1)); ++v) out.push_back(v);
  return out;
}

std::string format_matrix(const DistanceMatrix& matrix, std::string_view format) {
  const std::vector<std::int32_t> labels = value_labels(matrix.bits());
  std::ostringstream out;
  if (format == "csv") {
    out << "value";
    for (std::int32_t c : labels) out << ',' << c;
    out << '\n';
    for (std::int32_t r : labels) {
      out << r;
      for (std::int32_t c : labels) out << ',' << matrix.at(r, c);
      out << '\n';
    }
  } else if (format == "table") {
    const int width = matrix.bits() > 4 ? 5 : 3;
    out << std::setw(width) << "";
    for (std::int32_t c : labels) out << std::setw(width) << c;
    out << '\n';
    for (std::int32_t r : labels) {
      out << std::setw(width) << r;
      for (std::int32_t c : labels) {
        if (r == c)
          out << std::setw(width) << '-';
        else
          out << std::setw(width) << matrix.at(r, c);
      }
      out << '\n';
    }
  } else {
    throw std::invalid_argument("unknown matrix format '" + std::string(format) + "' (expected table or csv)");
  }
  return out.str();
}

}  // namespace dncode
