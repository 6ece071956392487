#include "dncode/code.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>

#include "dncode/kernels.hpp"
#include "dncode/random.hpp"

namespace dncode {

namespace {

void check_length(int length) {
  if (length < 1 || length > kMaxWordLength)
    throw std::invalid_argument("code length must be in [1, 64], got " + std::to_string(length));
}

// Incremental GF(2) row echelon form keyed by leading bit.
class EchelonBasis {
 public:
  // Returns false (and leaves the basis unchanged) when v is in the span.
  bool insert(std::uint64_t v) {
    while (v != 0) {
      const int lead = 63 - std::countl_zero(v);
      if (pivot_[lead] == 0) {
        pivot_[lead] = v;
        ++rank_;
        return true;
      }
      v ^= pivot_[lead];
    }
    return false;
  }
  int rank() const noexcept { return rank_; }

 private:
  std::array<std::uint64_t, 64> pivot_{};
  int rank_ = 0;
};

// Basis of {x in F_2^n : popcount(x & row) even for every row}.
std::vector<std::uint64_t> null_space(std::span<const std::uint64_t> rows, int length) {
  // Reduced row echelon form; pivot on the highest remaining bit.
  std::vector<std::uint64_t> reduced(rows.begin(), rows.end());
  std::vector<int> pivots;
  std::size_t next = 0;
  for (int bit = length - 1; bit >= 0 && next < reduced.size(); --bit) {
    const std::uint64_t mask = std::uint64_t{1} << bit;
    auto it = std::find_if(reduced.begin() + static_cast<std::ptrdiff_t>(next), reduced.end(),
                           [mask](std::uint64_t r) { return (r & mask) != 0; });
    if (it == reduced.end()) continue;
    std::iter_swap(reduced.begin() + static_cast<std::ptrdiff_t>(next), it);
    for (std::size_t k = 0; k < reduced.size(); ++k)
      if (k != next && (reduced[k] & mask)) reduced[k] ^= reduced[next];
    pivots.push_back(bit);
    ++next;
  }
  reduced.resize(next);

  std::vector<std::uint64_t> basis;
  for (int bit = length - 1; bit >= 0; --bit) {
    if (std::find(pivots.begin(), pivots.end(), bit) != pivots.end()) continue;
    std::uint64_t x = std::uint64_t{1} << bit;
    for (std::size_t k = 0; k < reduced.size(); ++k)
      if (reduced[k] & (std::uint64_t{1} << bit)) x |= std::uint64_t{1} << pivots[k];
    basis.push_back(x);
  }
  return basis;
}

std::uint64_t combine(std::span<const std::uint64_t> rows, std::uint64_t message) {
  const std::size_t b = rows.size();
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < b; ++i)
    if ((message >> (b - 1 - i)) & 1U) word ^= rows[i];
  return word;
}

// Streams every combination of `rows` in Gray-code order through `sink`,
// batched so the weight kernels see contiguous buffers.
template <typename Sink>
void for_each_span_batch(std::span<const std::uint64_t> rows, Sink&& sink) {
  constexpr std::size_t kBatch = 4096;
  std::vector<std::uint64_t> buffer;
  buffer.reserve(kBatch);
  const std::uint64_t total = std::uint64_t{1} << rows.size();
  std::uint64_t word = 0;
  buffer.push_back(0);
  for (std::uint64_t step = 1; step < total; ++step) {
    word ^= rows[static_cast<std::size_t>(std::countr_zero(step))];
    buffer.push_back(word);
    if (buffer.size() == kBatch) {
      sink(std::span<const std::uint64_t>(buffer));
      buffer.clear();
    }
  }
  if (!buffer.empty()) sink(std::span<const std::uint64_t>(buffer));
}

std::vector<std::uint64_t> weight_histogram(std::span<const std::uint64_t> rows, int length) {
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(length) + 1, 0);
  for_each_span_batch(rows, [&](std::span<const std::uint64_t> words) {
    for (std::uint64_t w : words) ++hist[static_cast<std::size_t>(std::popcount(w))];
  });
  return hist;
}

std::uint64_t delete_coordinate(std::uint64_t word, int length, int coordinate) {
  const int shift = coordinate_shift(length, coordinate);
  const std::uint64_t high = shift + 1 >= 64 ? 0 : (word >> (shift + 1));
  return (high << shift) | (word & low_mask(shift));
}

std::vector<int> sorted_positions(std::span<const int> positions, int length) {
  std::vector<int> sorted(positions.begin(), positions.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("shortening positions must be distinct");
  for (int p : sorted)
    if (p < 1 || p > length)
      throw std::invalid_argument("shortening position " + std::to_string(p) +
                                  " outside [1, " + std::to_string(length) + "]");
  if (static_cast<int>(sorted.size()) >= length)
    throw std::invalid_argument("shortening would leave no coordinates");
  return sorted;
}

int smallest_nonzero_weight(const std::vector<std::uint64_t>& hist) {
  for (std::size_t w = 1; w < hist.size(); ++w)
    if (hist[w] != 0) return static_cast<int>(w);
  throw std::logic_error("no nonzero codeword");
}

std::optional<int> exact_min_distance(int length, std::span<const std::uint64_t> generator,
                                      const BinaryCode& code) {
  const int b = static_cast<int>(generator.size());
  if (b == 0) return std::nullopt;
  if (b <= kMaxDistanceScanDimension) {
    std::uint32_t best = kernels::kNoWeight;
    const auto& k = kernels::active();
    for_each_span_batch(generator, [&](std::span<const std::uint64_t> words) {
      best = std::min(best, k.min_nonzero_weight(words));
    });
    return static_cast<int>(best);
  }
  if (length - b <= kMaxDistanceScanDimension) return min_distance_via_dual(code);
  throw std::length_error("minimum distance of a [" + std::to_string(length) + ", " +
                          std::to_string(b) + "] code is outside the exact-scan regime");
}

}  // namespace

// ---------------------------------------------------------------- WordSet

WordSet::WordSet(int length, std::vector<std::uint64_t> words) : length_(length), words_(std::move(words)) {
  check_length(length);
  for (std::uint64_t w : words_)
    if ((w & ~low_mask(length)) != 0) throw std::invalid_argument("word longer than code length");
  std::sort(words_.begin(), words_.end());
  if (std::adjacent_find(words_.begin(), words_.end()) != words_.end())
    throw std::invalid_argument("codewords must be distinct");
  if (words_.empty()) throw std::invalid_argument("a code must be nonempty");
}

WordSet WordSet::from_strings(std::span<const std::string_view> words) {
  if (words.empty()) throw std::invalid_argument("a code must be nonempty");
  const int length = static_cast<int>(words.front().size());
  std::vector<std::uint64_t> values;
  for (std::string_view w : words) {
    const BitWord word = BitWord::from_string(w);
    if (word.length() != length) throw std::invalid_argument("codewords differ in length");
    values.push_back(word.value());
  }
  return WordSet(length, std::move(values));
}

bool WordSet::contains(std::uint64_t word) const {
  return std::binary_search(words_.begin(), words_.end(), word);
}

int min_distance(const WordSet& code) {
  if (code.size() < 2) throw std::invalid_argument("minimum distance needs at least two codewords");
  const auto words = code.words();
  int best = kMaxWordLength + 1;
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      best = std::min(best, std::popcount(words[i] ^ words[j]));
  return best;
}

WordSet shorten(const WordSet& code, std::span<const int> positions) {
  const std::vector<int> order = sorted_positions(positions, code.length());
  std::vector<std::uint64_t> kept;
  for (std::uint64_t w : code.words()) {
    bool zero = true;
    for (int p : order) zero = zero && ((w >> coordinate_shift(code.length(), p)) & 1U) == 0;
    if (!zero) continue;
    int length = code.length();
    for (int p : order) w = delete_coordinate(w, length--, p);
    kept.push_back(w);
  }
  return WordSet(code.length() - static_cast<int>(order.size()), std::move(kept));
}

// ------------------------------------------------------------- BinaryCode

BinaryCode::BinaryCode(int length, std::vector<std::uint64_t> generator)
    : length_(length), generator_(std::move(generator)) {
  check_length(length);
  if (static_cast<int>(generator_.size()) >= 64)
    throw std::invalid_argument("dimension must be below 64");
  EchelonBasis basis;
  for (std::uint64_t row : generator_) {
    if ((row & ~low_mask(length)) != 0)
      throw std::invalid_argument("generator row wider than code length");
    if (!basis.insert(row)) throw std::invalid_argument("generator rows are linearly dependent");
  }
  parity_check_ = null_space(generator_, length_);
  min_distance_ = exact_min_distance(length_, generator_, *this);
}

BinaryCode BinaryCode::span_of(int length, std::span<const std::uint64_t> words) {
  EchelonBasis basis;
  std::vector<std::uint64_t> rows;
  for (std::uint64_t w : words)
    if (basis.insert(w)) rows.push_back(w);
  return BinaryCode(length, std::move(rows));
}

bool BinaryCode::contains(std::uint64_t word) const noexcept {
  if ((word & ~low_mask(length_)) != 0) return false;
  for (std::uint64_t h : parity_check_)
    if (std::popcount(word & h) & 1) return false;
  return true;
}

bool BinaryCode::contains(const BitWord& word) const {
  if (word.length() != length_) throw std::invalid_argument("word length differs from code length");
  return contains(word.value());
}

std::uint64_t BinaryCode::encode_message(std::uint64_t message) const noexcept {
  return combine(generator_, message);
}

std::vector<std::uint64_t> BinaryCode::codewords() const {
  if (dimension() > kMaxEnumerableDimension)
    throw std::length_error("code too large to enumerate (dimension " + std::to_string(dimension()) + ")");
  std::vector<std::uint64_t> out(static_cast<std::size_t>(size()));
  for (std::uint64_t m = 0; m < size(); ++m) out[static_cast<std::size_t>(m)] = encode_message(m);
  return out;
}

WordSet BinaryCode::word_set() const { return WordSet(length_, codewords()); }

bool BinaryCode::same_codewords(const BinaryCode& other) const {
  if (other.length_ != length_ || other.dimension() != dimension()) return false;
  return std::all_of(generator_.begin(), generator_.end(),
                     [&](std::uint64_t row) { return other.contains(row); });
}

int min_distance(const BinaryCode& code) {
  if (!code.certified_min_distance())
    throw std::invalid_argument("minimum distance needs at least two codewords");
  return *code.certified_min_distance();
}

std::vector<std::uint64_t> weight_distribution(const BinaryCode& code) {
  if (code.dimension() > kMaxDistanceScanDimension)
    throw std::length_error("code too large to enumerate");
  return weight_histogram(code.generator(), code.length());
}

std::vector<std::uint64_t> weight_distribution_via_dual(const BinaryCode& code) {
  const int n = code.length();
  const int redundancy = n - code.dimension();
  if (redundancy > kMaxDistanceScanDimension) throw std::length_error("dual code too large to enumerate");
  const std::vector<std::uint64_t> dual = weight_histogram(code.parity_check(), n);

  // Binomials up to 64 choose 32 fit comfortably in 128 bits.
  std::vector<std::vector<__int128>> binom(static_cast<std::size_t>(n) + 1,
                                           std::vector<__int128>(static_cast<std::size_t>(n) + 1, 0));
  for (int i = 0; i <= n; ++i) {
    binom[i][0] = 1;
    for (int k = 1; k <= i; ++k) binom[i][k] = binom[i - 1][k - 1] + (k <= i - 1 ? binom[i - 1][k] : 0);
  }
  auto krawtchouk = [&](int j, int i) {
    __int128 sum = 0;
    for (int s = 0; s <= j; ++s) {
      if (s > i || j - s > n - i) continue;
      const __int128 term = binom[i][s] * binom[n - i][j - s];
      sum += (s % 2 == 0) ? term : -term;
    }
    return sum;
  };

  std::vector<std::uint64_t> out(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 0; j <= n; ++j) {
    __int128 acc = 0;
    for (int i = 0; i <= n; ++i)
      if (dual[i] != 0) acc += static_cast<__int128>(dual[i]) * krawtchouk(j, i);
    out[static_cast<std::size_t>(j)] = static_cast<std::uint64_t>(acc >> redundancy);
  }
  return out;
}

int min_distance_via_dual(const BinaryCode& code) {
  if (code.dimension() == 0) throw std::invalid_argument("minimum distance needs at least two codewords");
  return smallest_nonzero_weight(weight_distribution_via_dual(code));
}

int gf2_rank(std::span<const std::uint64_t> rows) {
  EchelonBasis basis;
  for (std::uint64_t r : rows) basis.insert(r);
  return basis.rank();
}

// ----------------------------------------------------------- constructions

BinaryCode construct_hamming(int r) {
  if (r < 2 || r > 6) throw std::invalid_argument("Hamming parameter r must be in [2, 6]");
  const int n = (1 << r) - 1;
  std::vector<std::uint64_t> columns(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    columns[static_cast<std::size_t>(i)] = r == 3 ? kHamming7Columns[i] : static_cast<std::uint64_t>(i + 1);

  std::vector<std::uint64_t> check(static_cast<std::size_t>(r), 0);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < n; ++i)
      if ((columns[static_cast<std::size_t>(i)] >> j) & 1U)
        check[static_cast<std::size_t>(j)] |= std::uint64_t{1} << coordinate_shift(n, i + 1);
  return BinaryCode(n, null_space(check, n));
}

BinaryCode extend_code(const BinaryCode& code) {
  const int n = code.length();
  if (n + 1 > kMaxWordLength) throw std::invalid_argument("extended code would exceed 64 bits");
  std::vector<std::uint64_t> rows;
  for (std::uint64_t row : code.generator())
    rows.push_back((static_cast<std::uint64_t>(std::popcount(row) & 1) << n) | row);
  return BinaryCode(n + 1, std::move(rows));
}

BinaryCode shorten_code(const BinaryCode& code, std::span<const int> positions) {
  const std::vector<int> order = sorted_positions(positions, code.length());
  std::vector<std::uint64_t> rows(code.generator().begin(), code.generator().end());
  int length = code.length();
  for (int p : order) {
    const std::uint64_t mask = std::uint64_t{1} << coordinate_shift(length, p);
    auto pivot = std::find_if(rows.begin(), rows.end(), [mask](std::uint64_t r) { return (r & mask) != 0; });
    if (pivot != rows.end()) {
      const std::uint64_t pr = *pivot;
      rows.erase(pivot);
      for (std::uint64_t& r : rows)
        if (r & mask) r ^= pr;
    }
    for (std::uint64_t& r : rows) r = delete_coordinate(r, length, p);
    --length;
  }
  return BinaryCode(length, std::move(rows));
}

std::vector<int> last_positions(int length, int count) {
  if (count < 0 || count > length) throw std::invalid_argument("bad shortening count");
  std::vector<int> out;
  for (int p = length - count + 1; p <= length; ++p) out.push_back(p);
  return out;
}

BinaryCode linear_subcode(const BinaryCode& code, int dim, std::uint64_t seed) {
  if (dim < 0 || dim > code.dimension())
    throw std::invalid_argument("subcode dimension " + std::to_string(dim) + " exceeds code dimension " +
                                std::to_string(code.dimension()));
  DeterministicRng rng(seed);
  EchelonBasis basis;
  std::vector<std::uint64_t> rows;
  while (static_cast<int>(rows.size()) < dim) {
    const std::uint64_t message = 1 + rng.below(code.size() - 1);
    const std::uint64_t word = code.encode_message(message);
    if (basis.insert(word)) rows.push_back(word);
  }
  return BinaryCode(code.length(), std::move(rows));
}

// ---------------------------------------------------------------- catalog

std::string_view to_string(CodeId id) {
  switch (id) {
    case CodeId::C7_3: return "C7_3";
    case CodeId::C8_4: return "C8_4";
    case CodeId::C9_4: return "C9_4";
    case CodeId::C12_3: return "C12_3";
    case CodeId::C13_4: return "C13_4";
    case CodeId::C14_4: return "C14_4";
  }
  throw std::invalid_argument("unknown code id");
}

CodeId parse_code_id(std::string_view name) {
  for (CodeId id : kAllCodeIds)
    if (to_string(id) == name) return id;
  throw std::invalid_argument("unknown code id '" + std::string(name) +
                              "' (expected C7_3, C8_4, C9_4, C12_3, C13_4 or C14_4)");
}

CodeParameters catalogued_parameters(CodeId id) {
  switch (id) {
    case CodeId::C7_3: return {7, 4, 3};
    case CodeId::C8_4: return {8, 4, 4};
    case CodeId::C9_4: return {9, 4, 4};
    case CodeId::C12_3: return {12, 8, 3};
    case CodeId::C13_4: return {13, 8, 4};
    case CodeId::C14_4: return {14, 8, 4};
  }
  throw std::invalid_argument("unknown code id");
}

BinaryCode canonical_code(CodeId id) {
  switch (id) {
    case CodeId::C7_3: return construct_hamming(3);
    case CodeId::C8_4: return extend_code(construct_hamming(3));
    case CodeId::C9_4: return shorten_code(extend_code(construct_hamming(4)), last_positions(16, 7));
    case CodeId::C12_3: return shorten_code(construct_hamming(4), last_positions(15, 3));
    case CodeId::C13_4: return shorten_code(extend_code(construct_hamming(4)), last_positions(16, 3));
    case CodeId::C14_4:
      return linear_subcode(shorten_code(extend_code(construct_hamming(4)), last_positions(16, 2)), 8);
  }
  throw std::invalid_argument("unknown code id");
}

}  // namespace dncode
