#include <algorithm>
#include <bit>

#include "dncode/kernels.hpp"

namespace dncode::kernels {

namespace {

void xor_popcount(std::uint64_t ref, std::span<const std::uint64_t> words,
                  std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < words.size(); ++i)
    out[i] = static_cast<std::uint32_t>(std::popcount(ref ^ words[i]));
}

std::uint32_t min_xor_popcount(std::uint64_t ref, std::span<const std::uint64_t> words) {
  std::uint32_t best = kNoWeight;
  for (std::uint64_t w : words)
    best = std::min(best, static_cast<std::uint32_t>(std::popcount(ref ^ w)));
  return best;
}

std::uint32_t min_nonzero_weight(std::span<const std::uint64_t> words) {
  std::uint32_t best = kNoWeight;
  for (std::uint64_t w : words)
    if (w != 0) best = std::min(best, static_cast<std::uint32_t>(std::popcount(w)));
  return best;
}

std::size_t syndrome_flags(std::span<const std::uint64_t> words,
                           std::span<const std::uint64_t> check_rows,
                           std::span<std::uint8_t> flags) {
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::uint8_t bad = 0;
    for (std::uint64_t row : check_rows) bad |= static_cast<std::uint8_t>(std::popcount(words[i] & row) & 1);
    flags[i] = bad;
    flagged += bad;
  }
  return flagged;
}

constexpr KernelTable kScalar{"scalar", xor_popcount, min_xor_popcount, min_nonzero_weight,
                              syndrome_flags};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace dncode::kernels
