#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dncode/encoding_map.hpp"
#include "dncode/rational.hpp"

namespace dncode {

class TraceParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WeightChange {
  std::string layer_id;
  std::uint64_t index = 0;
  std::int32_t old_value = 0;
  std::int32_t new_value = 0;

  friend bool operator==(const WeightChange&, const WeightChange&) = default;
};

struct TraceMeta {
  std::string method;
  int bits = 4;
  std::string model;
  std::string dataset;

  friend bool operator==(const TraceMeta&, const TraceMeta&) = default;
};

struct AttackTrace {
  TraceMeta meta;
  std::vector<WeightChange> changes;

  friend bool operator==(const AttackTrace&, const AttackTrace&) = default;
};

// Checks old != new and the range of both values; throws TraceParseError
// naming the offending change.
void validate_trace(const AttackTrace& trace);

// JSON document: {"meta": {"method", "b", "model", "dataset"},
//                 "changes": [{"layer", "index", "old", "new"}, ...]}
AttackTrace parse_trace(std::string_view document);
std::string serialize_trace(const AttackTrace& trace);

// Every *.json file in `directory`, ordered by file name.
std::vector<AttackTrace> load_trace_dir(const std::filesystem::path& directory);

struct TwosComplement {
  int bits;
};

// How weights are stored: plain two's complement or through an encoding map.
using Representation = std::variant<TwosComplement, EncodingMap>;

int representation_bits(const Representation& representation);

// Flips needed to move a stored `from` to a stored `to`.
int change_cost(const Representation& representation, std::int32_t from, std::int32_t to);

// Throws std::invalid_argument when the bit widths differ.
std::uint64_t cost_of_trace(const AttackTrace& trace, const Representation& representation);

struct CostStats {
  std::uint64_t min = 0;
  Rational avg;
  std::uint64_t max = 0;
};

// Throws std::invalid_argument for an empty list or mixed bit widths.
CostStats trace_stats(std::span<const AttackTrace> traces, const Representation& representation);

// Probability of a k-bit change for k = 1..4.
using MultiflipWeights = std::array<double, 4>;

struct SynthesisParams {
  int bits = 4;
  std::size_t num_changes = 0;
  double msb_fraction = 0.714;
  MultiflipWeights multiflip{};
  std::uint64_t seed = 0;
  std::string layer_id = "synthetic";
};

// Default MSB share of flips and multi-flip mix for 4- and 8-bit networks.
double default_msb_fraction(int bits);
MultiflipWeights default_multiflip_weights(int bits);
SynthesisParams default_synthesis(int bits, std::size_t num_changes, std::uint64_t seed);

// Each change draws a uniform old value, then flips k distinct bits of its
// two's-complement pattern, the first being the sign bit with probability
// msb_fraction.
AttackTrace synthesize_trace(const SynthesisParams& params);

class PairFrequency {
 public:
  explicit PairFrequency(int bits);

  int bits() const noexcept { return bits_; }
  std::uint64_t at(std::int32_t old_value, std::int32_t new_value) const;
  void add(std::int32_t old_value, std::int32_t new_value);
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }

 private:
  std::size_t index(std::int32_t old_value, std::int32_t new_value) const;

  int bits_;
  std::vector<std::uint64_t> counts_;
};

// Rows are original values, columns the values they were changed to.
PairFrequency pair_frequency(std::span<const AttackTrace> traces, int bits);

// Observed Rowhammer flipping rate used for wall-time estimates.
inline constexpr double kHammerBitsPerSecond = 0.31;
double estimated_hammer_seconds(std::uint64_t cost);

}  // namespace dncode
