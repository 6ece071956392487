#pragma once

// Bit-level inner loops used by the code analysis and the verify sweep.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant. `active()` picks the widest variant the running CPU supports; set
// DNCODE_SIMD=scalar in the environment to force the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace dncode::kernels {

struct KernelTable {
  std::string_view name;

  // out[i] = popcount(ref ^ words[i]). out.size() must equal words.size().
  void (*xor_popcount)(std::uint64_t ref, std::span<const std::uint64_t> words,
                       std::span<std::uint32_t> out);

  // min_i popcount(ref ^ words[i]); 65 when words is empty.
  std::uint32_t (*min_xor_popcount)(std::uint64_t ref,
                                    std::span<const std::uint64_t> words);

  // Minimum popcount over the nonzero entries; 65 when there are none.
  std::uint32_t (*min_nonzero_weight)(std::span<const std::uint64_t> words);

  // flags[i] = 1 iff some check row has odd parity against words[i], i.e. the
  // word has a nonzero syndrome. Returns the number of flagged words.
  std::size_t (*syndrome_flags)(std::span<const std::uint64_t> words,
                                std::span<const std::uint64_t> check_rows,
                                std::span<std::uint8_t> flags);
};

inline constexpr std::uint32_t kNoWeight = 65;

const KernelTable& scalar();
// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2();
const KernelTable& active();

}  // namespace dncode::kernels
