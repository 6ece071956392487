// Distance tables transcribed from the published 4-bit tables; rows and
// columns run over the values -8 .. 7, diagonal entries stored as 0.
#pragma once

#include <array>
#include <cstdint>

namespace dncode::testdata {

using Table16 = std::array<std::array<std::uint32_t, 16>, 16>;

inline constexpr Table16 kTwosComplement4 = {{
    {{0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4}},
    {{1, 0, 2, 1, 2, 1, 3, 2, 2, 1, 3, 2, 3, 2, 4, 3}},
    {{1, 2, 0, 1, 2, 3, 1, 2, 2, 3, 1, 2, 3, 4, 2, 3}},
    {{2, 1, 1, 0, 3, 2, 2, 1, 3, 2, 2, 1, 4, 3, 3, 2}},
    {{1, 2, 2, 3, 0, 1, 1, 2, 2, 3, 3, 4, 1, 2, 2, 3}},
    {{2, 1, 3, 2, 1, 0, 2, 1, 3, 2, 4, 3, 2, 1, 3, 2}},
    {{2, 3, 1, 2, 1, 2, 0, 1, 3, 4, 2, 3, 2, 3, 1, 2}},
    {{3, 2, 2, 1, 2, 1, 1, 0, 4, 3, 3, 2, 3, 2, 2, 1}},
    {{1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3}},
    {{2, 1, 3, 2, 3, 2, 4, 3, 1, 0, 2, 1, 2, 1, 3, 2}},
    {{2, 3, 1, 2, 3, 4, 2, 3, 1, 2, 0, 1, 2, 3, 1, 2}},
    {{3, 2, 2, 1, 4, 3, 3, 2, 2, 1, 1, 0, 3, 2, 2, 1}},
    {{2, 3, 3, 4, 1, 2, 2, 3, 1, 2, 2, 3, 0, 1, 1, 2}},
    {{3, 2, 4, 3, 2, 1, 3, 2, 2, 1, 3, 2, 1, 0, 2, 1}},
    {{3, 4, 2, 3, 2, 3, 1, 2, 2, 3, 1, 2, 1, 2, 0, 1}},
    {{4, 3, 3, 2, 3, 2, 2, 1, 3, 2, 2, 1, 2, 1, 1, 0}},
}};

inline constexpr Table16 kHammingC7_3 = {{
    {{0, 4, 4, 4, 4, 4, 4, 4, 7, 3, 3, 3, 3, 3, 3, 3}},
    {{4, 0, 4, 4, 4, 4, 4, 4, 3, 7, 3, 3, 3, 3, 3, 3}},
    {{4, 4, 0, 4, 4, 4, 4, 4, 3, 3, 7, 3, 3, 3, 3, 3}},
    {{4, 4, 4, 0, 4, 4, 4, 4, 3, 3, 3, 7, 3, 3, 3, 3}},
    {{4, 4, 4, 4, 0, 4, 4, 4, 3, 3, 3, 3, 7, 3, 3, 3}},
    {{4, 4, 4, 4, 4, 0, 4, 4, 3, 3, 3, 3, 3, 7, 3, 3}},
    {{4, 4, 4, 4, 4, 4, 0, 4, 3, 3, 3, 3, 3, 3, 7, 3}},
    {{4, 4, 4, 4, 4, 4, 4, 0, 3, 3, 3, 3, 3, 3, 3, 7}},
    {{7, 3, 3, 3, 3, 3, 3, 3, 0, 4, 4, 4, 4, 4, 4, 4}},
    {{3, 7, 3, 3, 3, 3, 3, 3, 4, 0, 4, 4, 4, 4, 4, 4}},
    {{3, 3, 7, 3, 3, 3, 3, 3, 4, 4, 0, 4, 4, 4, 4, 4}},
    {{3, 3, 3, 7, 3, 3, 3, 3, 4, 4, 4, 0, 4, 4, 4, 4}},
    {{3, 3, 3, 3, 7, 3, 3, 3, 4, 4, 4, 4, 0, 4, 4, 4}},
    {{3, 3, 3, 3, 3, 7, 3, 3, 4, 4, 4, 4, 4, 0, 4, 4}},
    {{3, 3, 3, 3, 3, 3, 7, 3, 4, 4, 4, 4, 4, 4, 0, 4}},
    {{3, 3, 3, 3, 3, 3, 3, 7, 4, 4, 4, 4, 4, 4, 4, 0}},
}};

inline constexpr Table16 kExtendedC8_4 = {{
    {{0, 4, 4, 4, 4, 4, 4, 4, 8, 4, 4, 4, 4, 4, 4, 4}},
    {{4, 0, 4, 4, 4, 4, 4, 4, 4, 8, 4, 4, 4, 4, 4, 4}},
    {{4, 4, 0, 4, 4, 4, 4, 4, 4, 4, 8, 4, 4, 4, 4, 4}},
    {{4, 4, 4, 0, 4, 4, 4, 4, 4, 4, 4, 8, 4, 4, 4, 4}},
    {{4, 4, 4, 4, 0, 4, 4, 4, 4, 4, 4, 4, 8, 4, 4, 4}},
    {{4, 4, 4, 4, 4, 0, 4, 4, 4, 4, 4, 4, 4, 8, 4, 4}},
    {{4, 4, 4, 4, 4, 4, 0, 4, 4, 4, 4, 4, 4, 4, 8, 4}},
    {{4, 4, 4, 4, 4, 4, 4, 0, 4, 4, 4, 4, 4, 4, 4, 8}},
    {{8, 4, 4, 4, 4, 4, 4, 4, 0, 4, 4, 4, 4, 4, 4, 4}},
    {{4, 8, 4, 4, 4, 4, 4, 4, 4, 0, 4, 4, 4, 4, 4, 4}},
    {{4, 4, 8, 4, 4, 4, 4, 4, 4, 4, 0, 4, 4, 4, 4, 4}},
    {{4, 4, 4, 8, 4, 4, 4, 4, 4, 4, 4, 0, 4, 4, 4, 4}},
    {{4, 4, 4, 4, 8, 4, 4, 4, 4, 4, 4, 4, 0, 4, 4, 4}},
    {{4, 4, 4, 4, 4, 8, 4, 4, 4, 4, 4, 4, 4, 0, 4, 4}},
    {{4, 4, 4, 4, 4, 4, 8, 4, 4, 4, 4, 4, 4, 4, 0, 4}},
    {{4, 4, 4, 4, 4, 4, 4, 8, 4, 4, 4, 4, 4, 4, 4, 0}},
}};

inline constexpr Table16 kLinearC9_4 = {{
    {{0, 5, 5, 4, 5, 4, 4, 5, 8, 5, 5, 4, 5, 4, 4, 5}},
    {{5, 0, 4, 5, 4, 5, 5, 4, 5, 8, 4, 5, 4, 5, 5, 4}},
    {{5, 4, 0, 5, 4, 5, 5, 4, 5, 4, 8, 5, 4, 5, 5, 4}},
    {{4, 5, 5, 0, 5, 4, 4, 5, 4, 5, 5, 8, 5, 4, 4, 5}},
    {{5, 4, 4, 5, 0, 5, 5, 4, 5, 4, 4, 5, 8, 5, 5, 4}},
    {{4, 5, 5, 4, 5, 0, 4, 5, 4, 5, 5, 4, 5, 8, 4, 5}},
    {{4, 5, 5, 4, 5, 4, 0, 5, 4, 5, 5, 4, 5, 4, 8, 5}},
    {{5, 4, 4, 5, 4, 5, 5, 0, 5, 4, 4, 5, 4, 5, 5, 8}},
    {{8, 5, 5, 4, 5, 4, 4, 5, 0, 5, 5, 4, 5, 4, 4, 5}},
    {{5, 8, 4, 5, 4, 5, 5, 4, 5, 0, 4, 5, 4, 5, 5, 4}},
    {{5, 4, 8, 5, 4, 5, 5, 4, 5, 4, 0, 5, 4, 5, 5, 4}},
    {{4, 5, 5, 8, 5, 4, 4, 5, 4, 5, 5, 0, 5, 4, 4, 5}},
    {{5, 4, 4, 5, 8, 5, 5, 4, 5, 4, 4, 5, 0, 5, 5, 4}},
    {{4, 5, 5, 4, 5, 8, 4, 5, 4, 5, 5, 4, 5, 0, 4, 5}},
    {{4, 5, 5, 4, 5, 4, 8, 5, 4, 5, 5, 4, 5, 4, 0, 5}},
    {{5, 4, 4, 5, 4, 5, 5, 8, 5, 4, 4, 5, 4, 5, 5, 0}},
}};

inline constexpr std::array<std::uint64_t, 16> kCodebookC7_3 = {
    0x7F, 0x34, 0x68, 0x23, 0x1A, 0x51, 0x0D, 0x46, 0x00, 0x4B, 0x17, 0x5C, 0x65, 0x2E, 0x72, 0x39};
inline constexpr std::array<std::uint64_t, 16> kCodebookC8_4 = {
    0xFF, 0xB4, 0xE8, 0xA3, 0x9A, 0xD1, 0x8D, 0xC6, 0x00, 0x4B, 0x17, 0x5C, 0x65, 0x2E, 0x72, 0x39};
inline constexpr std::array<std::uint64_t, 16> kCodebookC9_4 = {
    0x1EF, 0x1F0, 0x193, 0x18C, 0x155, 0x14A, 0x129, 0x136, 0x000, 0x01F, 0x07C, 0x063, 0x0BA, 0x0A5, 0x0C6, 0x0D9};

// The explicit (7, 16, 3) Hamming codeword listing.
inline constexpr const char* kHamming7Listing[16] = {
    "0000000", "1001011", "0010111", "1011100", "1100101", "0101110", "1110010", "0111001",
    "1111111", "0110100", "1101000", "0100011", "0011010", "1010001", "0001101", "1000110"};

}  // namespace dncode::testdata
