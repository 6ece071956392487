#include "dncode/quantization.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dncode {

namespace {

void check_value(std::int32_t value, int bits) {
  if (bits < 1 || bits > 31) throw std::invalid_argument("bit width must be in [1, 31]");
  const std::int64_t lo = -(std::int64_t{1} << (bits - 1));
  const std::int64_t hi = -lo - 1;
  if (value < lo || value > hi)
    throw std::out_of_range("value " + std::to_string(value) + " does not fit in " + std::to_string(bits) +
                            "-bit two's complement");
}

double round_half_even(double x) {
  const double floor = std::floor(x);
  const double frac = x - floor;
  if (frac < 0.5) return floor;
  if (frac > 0.5) return floor + 1.0;
  return std::fmod(floor, 2.0) == 0.0 ? floor : floor + 1.0;
}

}  // namespace

void QuantConfig::validate() const {
  if (bits != 4 && bits != 8) throw std::invalid_argument("quantization bit width must be 4 or 8");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("quantization scale must be positive");
}

std::int32_t quantize(double omega, const QuantConfig& config) {
  config.validate();
  if (!std::isfinite(omega)) throw std::invalid_argument("cannot quantize a non-finite weight");
  const double lo = -std::ldexp(1.0, config.bits - 1);
  const double hi = -lo - 1.0;
  const double v = std::clamp(round_half_even(omega / config.delta), lo, hi);
  return static_cast<std::int32_t>(v);
}

double dequantize(std::int32_t value, const QuantConfig& config) {
  config.validate();
  return static_cast<double>(value) * config.delta;
}

BitWord twos_complement_bits(std::int32_t value, int bits) {
  check_value(value, bits);
  return BitWord(bits, static_cast<std::uint64_t>(twos_complement_pattern(value, bits)));
}

int flip_count(std::int32_t from, std::int32_t to, int bits) {
  return hamming_distance(twos_complement_bits(from, bits), twos_complement_bits(to, bits));
}

DistanceMatrix twos_complement_matrix(int bits) {
  if (bits < 1 || bits > kMaxMatrixBits) throw std::invalid_argument("distance matrix bit width out of range");
  const std::vector<std::int32_t> labels = value_labels(bits);
  std::vector<std::uint32_t> entries;
  entries.reserve(labels.size() * labels.size());
  for (std::int32_t r : labels)
    for (std::int32_t c : labels) entries.push_back(static_cast<std::uint32_t>(flip_count(r, c, bits)));
  return DistanceMatrix(bits, std::move(entries));
}

}  // namespace dncode
