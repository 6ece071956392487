#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "dncode/attack.hpp"
#include "dncode/quantization.hpp"
#include "oracles.hpp"

using namespace dncode;

namespace {

AttackTrace worked_example() {
  AttackTrace t;
  t.meta = TraceMeta{"T-BFA-Nto1", 4, "worked-example", "none"};
  t.changes = {{"conv1", 17, -1, 7}, {"conv1", 42, -1, 7}, {"fc", 3, -2, 6}};
  return t;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SynthesisParams msb_only(int bits, std::size_t n, std::uint64_t seed) {
  SynthesisParams p = default_synthesis(bits, n, seed);
  p.msb_fraction = 1.0;
  p.multiflip = {1.0, 0.0, 0.0, 0.0};
  return p;
}

AttackTrace trace_of(std::vector<WeightChange> changes, int bits = 4) {
  AttackTrace t;
  t.meta = TraceMeta{"TEST", bits, "m", "d"};
  t.changes = std::move(changes);
  return t;
}

}  // namespace

TEST_CASE("worked example replay") {
  const AttackTrace t = worked_example();
  CHECK(cost_of_trace(t, TwosComplement{4}) == 3);
  CHECK(cost_of_trace(t, canonical_map(CodeId::C7_3)) == 21);
  CHECK(cost_of_trace(trace_of({}), TwosComplement{4}) == 0);
}

TEST_CASE("the shipped fixture is the worked example") {
  const auto text = read_file(std::filesystem::path(DNCODE_SOURCE_DIR) / "data/traces/worked_example.json");
  CHECK(parse_trace(text) == worked_example());
}

TEST_CASE("trace documents round trip") {
  const AttackTrace t = worked_example();
  const std::string doc = serialize_trace(t);
  CHECK(parse_trace(doc) == t);
  CHECK(doc.find("\"meta\"") < doc.find("\"changes\""));
  const AttackTrace s = synthesize_trace(default_synthesis(8, 50, 3));
  CHECK(parse_trace(serialize_trace(s)) == s);
}

TEST_CASE("trace validation") {
  const std::string head = R"({"meta": {"method": "BFA", "b": 4, "model": "m", "dataset": "d"}, "changes": [)";
  CHECK(parse_trace(head + R"({"layer": "l", "index": 0, "old": 1, "new": 2}]})").changes.size() == 1);
  CHECK_THROWS_AS(parse_trace(head + R"({"layer": "l", "index": 0, "old": 3, "new": 3}]})"), TraceParseError);
  CHECK_THROWS_AS(parse_trace(head + R"({"layer": "l", "index": 0, "old": 3, "new": 9}]})"), TraceParseError);
  CHECK_THROWS_AS(parse_trace(head + R"({"layer": "l", "index": -1, "old": 3, "new": 2}]})"), TraceParseError);
  CHECK_THROWS_AS(parse_trace(head + R"({"layer": "l", "index": 0, "old": "3", "new": 2}]})"), TraceParseError);
  CHECK_THROWS_AS(parse_trace(head + R"({"index": 0, "old": 3, "new": 2}]})"), TraceParseError);
  CHECK_THROWS_AS(parse_trace(R"({"changes": []})"), TraceParseError);
  CHECK_THROWS_AS(parse_trace("{not json"), TraceParseError);

  try {
    parse_trace(head + R"({"layer": "l", "index": 0, "old": 1, "new": 2}, {"layer": "l", "index": 1, "old": 1, "new": 20}]})");
    FAIL("expected a parse error");
  } catch (const TraceParseError& e) {
    CHECK(std::string(e.what()).find("changes[1]") != std::string::npos);
  }
}

TEST_CASE("cost statistics") {
  const AttackTrace four = trace_of({{"l", 0, 0, -1}});      // 0000 -> 1111
  const AttackTrace fourteen = trace_of({{"l", 0, 0, -1}, {"l", 1, 0, -1}, {"l", 2, 0, -1}, {"l", 3, 7, 6},
                                         {"l", 4, 0, 1}});
  REQUIRE(cost_of_trace(four, TwosComplement{4}) == 4);
  REQUIRE(cost_of_trace(fourteen, TwosComplement{4}) == 14);
  const AttackTrace pair[] = {four, fourteen};
  const CostStats s = trace_stats(pair, TwosComplement{4});
  CHECK(s.min == 4);
  CHECK(s.avg == Rational(9));
  CHECK(s.max == 14);

  const AttackTrace single[] = {worked_example()};
  const CostStats one = trace_stats(single, canonical_map(CodeId::C7_3));
  CHECK(one.min == 21);
  CHECK(one.avg == Rational(21));
  CHECK(one.max == 21);

  CHECK_THROWS_AS(trace_stats({}, TwosComplement{4}), std::invalid_argument);
  const AttackTrace mixed[] = {four, trace_of({{"l", 0, 0, 1}}, 8)};
  CHECK_THROWS_AS(trace_stats(mixed, TwosComplement{4}), std::invalid_argument);
}

TEST_CASE("representation width must match the trace") {
  CHECK_THROWS_AS(cost_of_trace(worked_example(), TwosComplement{8}), std::invalid_argument);
  CHECK_THROWS_AS(cost_of_trace(worked_example(), canonical_map(CodeId::C13_4)), std::invalid_argument);
}

TEST_CASE("single sign-bit flips cost the weight of the first basis image") {
  for (CodeId id : kAllCodeIds) {
    CAPTURE(to_string(id));
    const EncodingMap map = canonical_map(id);
    const int b = map.bits();
    std::vector<AttackTrace> traces;
    for (std::uint64_t s = 0; s < 100; ++s) traces.push_back(synthesize_trace(msb_only(b, 5, s)));
    const CostStats plain = trace_stats(traces, TwosComplement{b});
    const CostStats coded = trace_stats(traces, map);
    const auto w = static_cast<std::uint64_t>(oracle::weight(map.basis_images()[0]));
    CHECK(plain.min == 5);
    CHECK(plain.max == 5);
    CHECK(coded.min == 5 * w);
    CHECK(coded.max == 5 * w);
    CHECK(coded.avg / plain.avg == Rational(static_cast<std::int64_t>(w)));
    if (id == CodeId::C7_3) CHECK(w == 7);
    if (id == CodeId::C8_4 || id == CodeId::C9_4) CHECK(w == 8);
  }
}

TEST_CASE("synthesis defaults and determinism") {
  CHECK(default_msb_fraction(4) == 0.714);
  CHECK(default_msb_fraction(8) == 0.804);
  for (int b : {4, 8}) {
    const auto w = default_multiflip_weights(b);
    CHECK(w[0] + w[1] + w[2] + w[3] == doctest::Approx(1.0));
  }
  CHECK(default_multiflip_weights(8) == MultiflipWeights{0.60, 0.36, 0.037, 0.003});

  const AttackTrace a = synthesize_trace(default_synthesis(4, 200, 17));
  const AttackTrace b = synthesize_trace(default_synthesis(4, 200, 17));
  const AttackTrace c = synthesize_trace(default_synthesis(4, 200, 18));
  CHECK(a.changes.size() == 200);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.meta.method == "SYNTH");
  validate_trace(a);
}

TEST_CASE("synthesized flips have the drawn multiplicity") {
  for (int b : {4, 8})
    for (int k = 1; k <= 4; ++k) {
      SynthesisParams p = default_synthesis(b, 300, static_cast<std::uint64_t>(10 * b + k));
      p.multiflip = {0, 0, 0, 0};
      p.multiflip[static_cast<std::size_t>(k - 1)] = 1.0;
      for (const WeightChange& ch : synthesize_trace(p).changes)
        CHECK(flip_count(ch.old_value, ch.new_value, b) == k);
    }
}

TEST_CASE("sign-bit-only synthesis toggles just the sign") {
  for (int b : {4, 8})
    for (const WeightChange& ch : synthesize_trace(msb_only(b, 2000, 99)).changes) {
      CHECK(flip_count(ch.old_value, ch.new_value, b) == 1);
      CHECK((ch.old_value < 0) != (ch.new_value < 0));
    }
}

TEST_CASE("the observed sign-bit share tracks msb_fraction") {
  SynthesisParams p = default_synthesis(4, 20000, 5);
  p.multiflip = {1.0, 0.0, 0.0, 0.0};
  std::size_t msb = 0;
  for (const WeightChange& ch : synthesize_trace(p).changes) msb += (ch.old_value < 0) != (ch.new_value < 0) ? 1 : 0;
  CHECK(static_cast<double>(msb) / 20000.0 == doctest::Approx(0.714).epsilon(0.03));
}

TEST_CASE("synthesis parameter validation") {
  SynthesisParams p = default_synthesis(4, 10, 1);
  p.msb_fraction = 1.5;
  CHECK_THROWS_AS(synthesize_trace(p), std::invalid_argument);
  p = default_synthesis(4, 10, 1);
  p.multiflip = {0.5, 0.2, 0.0, 0.0};
  CHECK_THROWS_AS(synthesize_trace(p), std::invalid_argument);
  p = default_synthesis(4, 10, 1);
  p.multiflip = {1.5, -0.5, 0.0, 0.0};
  CHECK_THROWS_AS(synthesize_trace(p), std::invalid_argument);
  p = default_synthesis(2, 10, 1);
  p.multiflip = {0.0, 0.0, 1.0, 0.0};
  CHECK_THROWS_AS(synthesize_trace(p), std::invalid_argument);
}

TEST_CASE("cost is additive over concatenation") {
  const EncodingMap map = canonical_map(CodeId::C9_4);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const AttackTrace x = synthesize_trace(default_synthesis(4, 40, s));
    const AttackTrace y = synthesize_trace(default_synthesis(4, 25, s + 1000));
    AttackTrace xy = x;
    xy.changes.insert(xy.changes.end(), y.changes.begin(), y.changes.end());
    CHECK(cost_of_trace(xy, map) == cost_of_trace(x, map) + cost_of_trace(y, map));
    CHECK(cost_of_trace(xy, TwosComplement{4}) == cost_of_trace(x, TwosComplement{4}) + cost_of_trace(y, TwosComplement{4}));
  }
}

TEST_CASE("C8_4 replay bounds") {
  const EncodingMap map = canonical_map(CodeId::C8_4);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const AttackTrace t = synthesize_trace(default_synthesis(4, 100, s));
    int max_flips = 1;
    for (const WeightChange& ch : t.changes) max_flips = std::max(max_flips, flip_count(ch.old_value, ch.new_value, 4));
    CHECK(cost_of_trace(t, map) * static_cast<std::uint64_t>(max_flips) >= cost_of_trace(t, TwosComplement{4}) * 4);
    SynthesisParams single = default_synthesis(4, 100, s);
    single.multiflip = {1.0, 0.0, 0.0, 0.0};
    for (const WeightChange& ch : synthesize_trace(single).changes) {
      const int c = change_cost(map, ch.old_value, ch.new_value);
      CHECK((c == 4 || c == 8));
    }
  }
}

TEST_CASE("pair frequency") {
  const PairFrequency empty = pair_frequency({}, 4);
  CHECK(std::all_of(empty.counts().begin(), empty.counts().end(), [](std::uint64_t c) { return c == 0; }));

  const AttackTrace one[] = {trace_of({{"l", 0, -1, 7}})};
  const PairFrequency f = pair_frequency(one, 4);
  CHECK(f.at(-1, 7) == 1);
  CHECK(std::accumulate(f.counts().begin(), f.counts().end(), std::uint64_t{0}) == 1);

  std::vector<AttackTrace> traces;
  for (std::uint64_t s = 0; s < 5; ++s) traces.push_back(synthesize_trace(default_synthesis(8, 500, s)));
  const PairFrequency g = pair_frequency(traces, 8);
  std::uint64_t total = 0;
  for (std::int32_t v = -128; v < 128; ++v) CHECK(g.at(v, v) == 0);
  for (std::uint64_t c : g.counts()) total += c;
  CHECK(total == 2500);
  CHECK_THROWS_AS(pair_frequency(traces, 4), std::invalid_argument);
}

TEST_CASE("trace directories load in file-name order") {
  const auto dir = std::filesystem::temp_directory_path() / "dncode_trace_dir_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const AttackTrace a = synthesize_trace(default_synthesis(4, 3, 1));
  const AttackTrace b = synthesize_trace(default_synthesis(4, 4, 2));
  std::ofstream(dir / "b.json") << serialize_trace(a);
  std::ofstream(dir / "a.json") << serialize_trace(b);
  std::ofstream(dir / "notes.txt") << "ignored";
  const auto loaded = load_trace_dir(dir);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0] == b);
  CHECK(loaded[1] == a);
  std::filesystem::remove_all(dir);
  CHECK_THROWS(load_trace_dir(dir));
}

TEST_CASE("hammer time estimate") {
  CHECK(estimated_hammer_seconds(0) == 0.0);
  CHECK(estimated_hammer_seconds(31) == doctest::Approx(100.0));
  for (std::uint64_t c = 1; c < 200; ++c) CHECK(estimated_hammer_seconds(c) > estimated_hammer_seconds(c - 1));
}
