// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>
#include <bit>

#include "dncode/kernels.hpp"
#include "kernels_internal.hpp"

namespace dncode::kernels {

namespace {

// Per-64-bit-lane popcount: nibble lookup, then byte sums via SAD.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0F);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

// Lane counts fit in the low 32 bits; the high halves stay zero, so only the
// even 32-bit lanes carry the running minimum.
inline std::uint32_t reduce_min_even_lanes(__m256i acc) {
  alignas(32) std::uint32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return std::min(std::min(lanes[0], lanes[2]), std::min(lanes[4], lanes[6]));
}

void xor_popcount(std::uint64_t ref, std::span<const std::uint64_t> words,
                  std::span<std::uint32_t> out) {
  const __m256i r = _mm256_set1_epi64x(static_cast<long long>(ref));
  const __m256i even = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
  std::size_t i = 0;
  for (; i + 4 <= words.size(); i += 4) {
    const __m256i counts = popcount_epi64(_mm256_xor_si256(load(words.data() + i), r));
    const __m256i packed = _mm256_permutevar8x32_epi32(counts, even);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + i), _mm256_castsi256_si128(packed));
  }
  for (; i < words.size(); ++i) out[i] = static_cast<std::uint32_t>(std::popcount(ref ^ words[i]));
}

std::uint32_t min_xor_popcount(std::uint64_t ref, std::span<const std::uint64_t> words) {
  const __m256i r = _mm256_set1_epi64x(static_cast<long long>(ref));
  __m256i acc = _mm256_set1_epi64x(kNoWeight);
  std::size_t i = 0;
  for (; i + 4 <= words.size(); i += 4)
    acc = _mm256_min_epu32(acc, popcount_epi64(_mm256_xor_si256(load(words.data() + i), r)));
  std::uint32_t best = reduce_min_even_lanes(acc);
  for (; i < words.size(); ++i)
    best = std::min(best, static_cast<std::uint32_t>(std::popcount(ref ^ words[i])));
  return best;
}

std::uint32_t min_nonzero_weight(std::span<const std::uint64_t> words) {
  const __m256i none = _mm256_set1_epi64x(kNoWeight);
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = none;
  std::size_t i = 0;
  for (; i + 4 <= words.size(); i += 4) {
    const __m256i w = load(words.data() + i);
    const __m256i counts = _mm256_blendv_epi8(popcount_epi64(w), none, _mm256_cmpeq_epi64(w, zero));
    acc = _mm256_min_epu32(acc, counts);
  }
  std::uint32_t best = reduce_min_even_lanes(acc);
  for (; i < words.size(); ++i)
    if (words[i] != 0) best = std::min(best, static_cast<std::uint32_t>(std::popcount(words[i])));
  return best;
}

inline __m256i parity_epi64(__m256i t) {
  t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 32));
  t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 16));
  t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 8));
  t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 4));
  t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 2));
  t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 1));
  return t;
}

std::size_t syndrome_flags(std::span<const std::uint64_t> words,
                           std::span<const std::uint64_t> check_rows,
                           std::span<std::uint8_t> flags) {
  const __m256i one = _mm256_set1_epi64x(1);
  std::size_t flagged = 0;
  std::size_t i = 0;
  for (; i + 4 <= words.size(); i += 4) {
    const __m256i w = load(words.data() + i);
    __m256i acc = _mm256_setzero_si256();
    for (std::uint64_t row : check_rows) {
      const __m256i h = _mm256_set1_epi64x(static_cast<long long>(row));
      acc = _mm256_or_si256(acc, parity_epi64(_mm256_and_si256(w, h)));
    }
    acc = _mm256_and_si256(acc, one);
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    for (int k = 0; k < 4; ++k) {
      flags[i + static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(lanes[k]);
      flagged += lanes[k];
    }
  }
  if (i < words.size())
    flagged += scalar().syndrome_flags(words.subspan(i), check_rows, flags.subspan(i));
  return flagged;
}

constexpr KernelTable kAvx2{"avx2", xor_popcount, min_xor_popcount, min_nonzero_weight,
                            syndrome_flags};

}  // namespace

const KernelTable& avx2_table() { return kAvx2; }

}  // namespace dncode::kernels
