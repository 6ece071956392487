#pragma once

#include <cstdint>

#include "dncode/bitword.hpp"
#include "dncode/encoding_map.hpp"

namespace dncode {

struct QuantConfig {
  int bits;
  double delta;

  // Throws std::invalid_argument unless bits is 4 or 8 and delta is a
  // positive finite number.
  void validate() const;
};

// round(omega / delta), ties to even, clamped to the b-bit range.
std::int32_t quantize(double omega, const QuantConfig& config);
double dequantize(std::int32_t value, const QuantConfig& config);

// Throws std::out_of_range when value does not fit in `bits`.
BitWord twos_complement_bits(std::int32_t value, int bits);

// Flips needed to turn one stored two's-complement value into the other.
int flip_count(std::int32_t from, std::int32_t to, int bits);

// Two's complement viewed as a distance matrix (Table II for b = 4).
DistanceMatrix twos_complement_matrix(int bits);

}  // namespace dncode
