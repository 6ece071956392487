#include "dncode/attack.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "dncode/quantization.hpp"
#include "dncode/random.hpp"

namespace dncode {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kMaxTraceBits = 16;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw TraceParseError(where + ": " + what);
}

const ordered_json& field(const ordered_json& object, const char* key, const std::string& where) {
  if (!object.is_object()) fail(where, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string string_field(const ordered_json& object, const char* key, const std::string& where) {
  const ordered_json& v = field(object, key, where);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

std::int64_t int_field(const ordered_json& object, const char* key, const std::string& where) {
  const ordered_json& v = field(object, key, where);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

bool in_range(std::int64_t value, int bits) {
  const std::int64_t lo = -(std::int64_t{1} << (bits - 1));
  return value >= lo && value <= -lo - 1;
}

void check_weights(const MultiflipWeights& weights, int bits) {
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double p = weights[k];
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("multi-flip probabilities must lie in [0, 1]");
    if (p > 0.0 && static_cast<int>(k) + 1 > bits)
      throw std::invalid_argument("cannot flip " + std::to_string(k + 1) + " bits of a " + std::to_string(bits) +
                                  "-bit value");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("multi-flip probabilities must sum to 1");
}

int draw_flip_count(DeterministicRng& rng, const MultiflipWeights& weights) {
  const double u = rng.unit();
  double cumulative = 0.0;
  int last = 1;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    cumulative += weights[k];
    last = static_cast<int>(k) + 1;
    if (u < cumulative) return last;
  }
  return last;
}

}  // namespace

void validate_trace(const AttackTrace& trace) {
  const int b = trace.meta.bits;
  if (b < 1 || b > kMaxTraceBits) throw TraceParseError("meta.b: bit width must be in [1, 16]");
  for (std::size_t i = 0; i < trace.changes.size(); ++i) {
    const WeightChange& c = trace.changes[i];
    const std::string where = "changes[" + std::to_string(i) + "]";
    if (!in_range(c.old_value, b)) fail(where + ".old", std::to_string(c.old_value) + " out of range for b=" + std::to_string(b));
    if (!in_range(c.new_value, b)) fail(where + ".new", std::to_string(c.new_value) + " out of range for b=" + std::to_string(b));
    if (c.old_value == c.new_value) fail(where, "old and new values are equal");
  }
}

AttackTrace parse_trace(std::string_view document) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document.begin(), document.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw TraceParseError(std::string("malformed trace document: ") + e.what());
  }
  AttackTrace trace;
  const ordered_json& meta = field(doc, "meta", "document");
  trace.meta.method = string_field(meta, "method", "meta");
  const std::int64_t b = int_field(meta, "b", "meta");
  if (b < 1 || b > kMaxTraceBits) fail("meta.b", "bit width must be in [1, 16]");
  trace.meta.bits = static_cast<int>(b);
  trace.meta.model = string_field(meta, "model", "meta");
  trace.meta.dataset = string_field(meta, "dataset", "meta");

  const ordered_json& changes = field(doc, "changes", "document");
  if (!changes.is_array()) fail("changes", "expected an array");
  trace.changes.reserve(changes.size());
  for (std::size_t i = 0; i < changes.size(); ++i) {
    const std::string where = "changes[" + std::to_string(i) + "]";
    const ordered_json& c = changes[i];
    WeightChange change;
    change.layer_id = string_field(c, "layer", where);
    const std::int64_t index = int_field(c, "index", where);
    if (index < 0) fail(where + ".index", "must be non-negative");
    change.index = static_cast<std::uint64_t>(index);
    const std::int64_t old_value = int_field(c, "old", where);
    const std::int64_t new_value = int_field(c, "new", where);
    if (!in_range(old_value, trace.meta.bits)) fail(where + ".old", std::to_string(old_value) + " out of range for b=" + std::to_string(b));
    if (!in_range(new_value, trace.meta.bits)) fail(where + ".new", std::to_string(new_value) + " out of range for b=" + std::to_string(b));
    change.old_value = static_cast<std::int32_t>(old_value);
    change.new_value = static_cast<std::int32_t>(new_value);
    trace.changes.push_back(std::move(change));
  }
  validate_trace(trace);
  return trace;
}

std::string serialize_trace(const AttackTrace& trace) {
  ordered_json doc;
  doc["meta"] = {{"method", trace.meta.method},
                 {"b", trace.meta.bits},
                 {"model", trace.meta.model},
                 {"dataset", trace.meta.dataset}};
  ordered_json changes = ordered_json::array();
  for (const WeightChange& c : trace.changes)
    changes.push_back({{"layer", c.layer_id}, {"index", c.index}, {"old", c.old_value}, {"new", c.new_value}});
  doc["changes"] = std::move(changes);
  return doc.dump(2) + "\n";
}

std::vector<AttackTrace> load_trace_dir(const std::filesystem::path& directory) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<AttackTrace> traces;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TraceParseError(path.string() + ": cannot open");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      traces.push_back(parse_trace(buffer.str()));
    } catch (const TraceParseError& e) {
      throw TraceParseError(path.filename().string() + ": " + e.what());
    }
  }
  return traces;
}

int representation_bits(const Representation& representation) {
  return std::visit(
      [](const auto& r) {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, TwosComplement>)
          return r.bits;
        else
          return r.bits();
      },
      representation);
}

int change_cost(const Representation& representation, std::int32_t from, std::int32_t to) {
  return std::visit(
      [&](const auto& r) {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, TwosComplement>)
          return flip_count(from, to, r.bits);
        else
          return std::popcount(r.encode(from) ^ r.encode(to));
      },
      representation);
}

std::uint64_t cost_of_trace(const AttackTrace& trace, const Representation& representation) {
  const int b = representation_bits(representation);
  if (b != trace.meta.bits)
    throw std::invalid_argument("trace uses " + std::to_string(trace.meta.bits) + "-bit weights but the representation is " +
                                std::to_string(b) + "-bit");
  std::uint64_t total = 0;
  for (const WeightChange& c : trace.changes)
    total += static_cast<std::uint64_t>(change_cost(representation, c.old_value, c.new_value));
  return total;
}

CostStats trace_stats(std::span<const AttackTrace> traces, const Representation& representation) {
  if (traces.empty()) throw std::invalid_argument("trace_stats needs at least one trace");
  for (const AttackTrace& t : traces)
    if (t.meta.bits != traces.front().meta.bits) throw std::invalid_argument("traces mix bit widths");
  CostStats stats;
  stats.min = ~std::uint64_t{0};
  std::uint64_t sum = 0;
  for (const AttackTrace& t : traces) {
    const std::uint64_t cost = cost_of_trace(t, representation);
    stats.min = std::min(stats.min, cost);
    stats.max = std::max(stats.max, cost);
    sum += cost;
  }
  stats.avg = Rational(static_cast<std::int64_t>(sum), static_cast<std::int64_t>(traces.size()));
  return stats;
}

double default_msb_fraction(int bits) { return bits == 8 ? 0.804 : 0.714; }

MultiflipWeights default_multiflip_weights(int bits) {
  if (bits == 8) return {0.60, 0.36, 0.037, 0.003};
  return {0.85, 0.14, 0.0099, 0.0001};
}

SynthesisParams default_synthesis(int bits, std::size_t num_changes, std::uint64_t seed) {
  SynthesisParams p;
  p.bits = bits;
  p.num_changes = num_changes;
  p.msb_fraction = default_msb_fraction(bits);
  p.multiflip = default_multiflip_weights(bits);
  p.seed = seed;
  return p;
}

AttackTrace synthesize_trace(const SynthesisParams& params) {
  const int b = params.bits;
  if (b < 1 || b > kMaxTraceBits) throw std::invalid_argument("bit width must be in [1, 16]");
  if (!(params.msb_fraction >= 0.0 && params.msb_fraction <= 1.0))
    throw std::invalid_argument("msb fraction must lie in [0, 1]");
  check_weights(params.multiflip, b);

  DeterministicRng rng(params.seed);
  AttackTrace trace;
  trace.meta = TraceMeta{"SYNTH", b, "synthetic", "none"};
  trace.changes.reserve(params.num_changes);
  const std::int32_t lo = -(std::int32_t{1} << (b - 1));
  std::vector<int> remaining;
  for (std::size_t i = 0; i < params.num_changes; ++i) {
    const auto old_value = static_cast<std::int32_t>(lo + static_cast<std::int32_t>(rng.below(std::uint64_t{1} << b)));
    const int k = draw_flip_count(rng, params.multiflip);

    // Bit positions 0..b-1 from the LSB; b-1 is the sign bit.
    remaining.resize(static_cast<std::size_t>(b));
    std::iota(remaining.begin(), remaining.end(), 0);
    std::uint64_t flips = 0;
    auto take = [&](std::size_t slot) {
      flips |= std::uint64_t{1} << remaining[slot];
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
    };
    if (b == 1 || rng.unit() < params.msb_fraction)
      take(static_cast<std::size_t>(b - 1));
    else
      take(static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(b - 1))));
    for (int f = 1; f < k; ++f) take(static_cast<std::size_t>(rng.below(remaining.size())));

    const auto pattern = static_cast<std::uint64_t>(twos_complement_pattern(old_value, b)) ^ flips;
    trace.changes.push_back(WeightChange{params.layer_id, i, old_value, signed_from_pattern(pattern, b)});
  }
  return trace;
}

PairFrequency::PairFrequency(int bits) : bits_(bits) {
  if (bits < 1 || bits > kMaxMatrixBits) throw std::invalid_argument("pair frequency bit width out of range");
  counts_.assign((std::size_t{1} << bits) * (std::size_t{1} << bits), 0);
}

std::size_t PairFrequency::index(std::int32_t old_value, std::int32_t new_value) const {
  if (!in_range(old_value, bits_) || !in_range(new_value, bits_)) throw std::out_of_range("pair frequency index");
  const std::int32_t lo = -(std::int32_t{1} << (bits_ - 1));
  return static_cast<std::size_t>(old_value - lo) * (std::size_t{1} << bits_) + static_cast<std::size_t>(new_value - lo);
}

std::uint64_t PairFrequency::at(std::int32_t old_value, std::int32_t new_value) const {
  return counts_[index(old_value, new_value)];
}

void PairFrequency::add(std::int32_t old_value, std::int32_t new_value) { ++counts_[index(old_value, new_value)]; }

PairFrequency pair_frequency(std::span<const AttackTrace> traces, int bits) {
  PairFrequency freq(bits);
  for (const AttackTrace& t : traces) {
    if (t.meta.bits != bits) throw std::invalid_argument("trace bit width differs from requested matrix width");
    for (const WeightChange& c : t.changes) freq.add(c.old_value, c.new_value);
  }
  return freq;
}

double estimated_hammer_seconds(std::uint64_t cost) { return static_cast<double>(cost) / kHammerBitsPerSecond; }

}  // namespace dncode
