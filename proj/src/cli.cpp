#include "dncode/cli.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dncode/attack.hpp"
#include "dncode/code.hpp"
#include "dncode/encoding_map.hpp"
#include "dncode/kernels.hpp"
#include "dncode/protect.hpp"
#include "dncode/quantization.hpp"
#include "dncode/random.hpp"

namespace dncode::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct Options {
  std::string code;
  int bits = 0;
  std::string in;
  std::string out;
  std::string layer = "layer0";
  std::uint64_t seed = 1;
  std::size_t changes = 0;
  std::optional<double> msb_fraction;
  std::string trace_dir;
  std::string format = "table";
  std::optional<double> delta;
  std::size_t count = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

// Sends structured text to --out when given, else to stdout.
void emit(const Options& opt, std::ostream& out, std::string_view text) {
  if (opt.out.empty())
    out << text;
  else
    write_file(opt.out, text);
}

std::vector<std::string_view> tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto sep = [](char c) { return c == ',' || c == ' ' || c == '\n' || c == '\r' || c == '\t'; };
  while (i < text.size()) {
    while (i < text.size() && sep(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !sep(text[i])) ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, std::size_t position) {
  T value{};
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw std::invalid_argument("input value " + std::to_string(position) + " ('" + std::string(token) +
                                "') is not a valid number");
  return value;
}

std::string stats_text(const CostStats& s) {
  return std::to_string(s.min) + "/" + s.avg.to_string() + "/" + std::to_string(s.max);
}

ordered_json stats_json(const CostStats& s) {
  return {{"min", s.min}, {"avg", s.avg.to_string()}, {"max", s.max}};
}

ordered_json report_json(const VerifyReport& r) {
  return {{"clean", r.clean}, {"scanned", r.scanned}, {"corrupted_indices", r.corrupted_indices}};
}

void summarize_report(const VerifyReport& r, std::ostream& err) {
  if (r.clean) {
    err << "clean: " << r.scanned << " weights verified\n";
    return;
  }
  err << "CORRUPTION DETECTED in " << r.corrupted_indices.size() << " of " << r.scanned << " weights (first index "
      << r.corrupted_indices.front() << ")\n";
}

EncodedBlob load_blob(const std::string& path) {
  const std::string bytes = read_file(path);
  return parse_blob(std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

// ----------------------------------------------------------- subcommands

int cmd_codebook(const Options& opt, std::ostream& out, std::ostream&) {
  const EncodingMap map = canonical_map(parse_code_id(opt.code));
  std::string text;
  for (std::uint64_t w : map.codebook()) text += to_hex(w, map.length()) + "\n";
  emit(opt, out, text);
  return kExitOk;
}

int cmd_distances(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.code.empty()) {
    if (opt.bits == 0) throw std::invalid_argument("distances needs --code or --bits");
    emit(opt, out, format_matrix(twos_complement_matrix(opt.bits), opt.format));
    return kExitOk;
  }
  const EncodingMap map = canonical_map(parse_code_id(opt.code));
  if (opt.bits != 0 && opt.bits != map.bits())
    throw std::invalid_argument(opt.code + " encodes " + std::to_string(map.bits()) + "-bit values");
  emit(opt, out, format_matrix(distance_matrix(map), opt.format));
  err << opt.code << ": " << map.bits() << "-bit values, minimum distance " << min_distance(map.code()) << "\n";
  return kExitOk;
}

int cmd_encode(const Options& opt, std::ostream&, std::ostream& err) {
  if (opt.out.empty()) throw std::invalid_argument("encode needs --out");
  const CodeId id = parse_code_id(opt.code);
  const EncodingMap map = canonical_map(id);
  const std::string text = read_file(opt.in);
  const auto items = tokens(text);
  std::vector<std::int32_t> values;
  values.reserve(items.size());
  if (opt.delta) {
    const QuantConfig config{map.bits(), *opt.delta};
    config.validate();
    for (std::size_t i = 0; i < items.size(); ++i) values.push_back(quantize(parse_number<double>(items[i], i), config));
  } else {
    for (std::size_t i = 0; i < items.size(); ++i) values.push_back(parse_number<std::int32_t>(items[i], i));
  }
  const EncodedBlob blob = encode_tensor(map, id, values, opt.layer);
  const auto bytes = serialize_blob(blob);
  write_file(opt.out, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  if (opt.delta) {
    const SidecarEntry entry{opt.layer, map.bits(), *opt.delta};
    write_file(opt.out + ".meta", format_sidecar(std::span(&entry, 1)));
  }
  err << "encoded " << values.size() << " weights with " << opt.code << " (" << blob.payload.size()
      << " payload bytes) -> " << opt.out << "\n";
  return kExitOk;
}

int cmd_decode(const Options& opt, std::ostream& out, std::ostream& err) {
  const CodeId id = parse_code_id(opt.code);
  const EncodingMap map = canonical_map(id);
  const TensorDecode result = decode_tensor(map, id, load_blob(opt.in));
  if (const auto* report = std::get_if<VerifyReport>(&result)) {
    out << report_json(*report).dump() << "\n";
    summarize_report(*report, err);
    return kExitCorruption;
  }
  std::string text;
  for (std::int32_t v : std::get<std::vector<std::int32_t>>(result)) text += std::to_string(v) + "\n";
  emit(opt, out, text);
  return kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const CodeId id = parse_code_id(opt.code);
  const VerifyReport report = verify_blob(canonical_map(id), id, load_blob(opt.in));
  emit(opt, out, report_json(report).dump() + "\n");
  summarize_report(report, err);
  return report.clean ? kExitOk : kExitCorruption;
}

int cmd_analyze(const Options& opt, std::ostream& out, std::ostream& err) {
  std::vector<AttackTrace> traces;
  std::vector<std::string> names;
  if (!opt.trace_dir.empty()) {
    traces = load_trace_dir(opt.trace_dir);
    for (const auto& entry : fs::directory_iterator(opt.trace_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json") names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
  } else if (!opt.in.empty()) {
    traces.push_back(parse_trace(read_file(opt.in)));
    names.push_back(fs::path(opt.in).filename().string());
  } else {
    throw std::invalid_argument("analyze-trace needs --in or --trace-dir");
  }
  if (traces.empty()) throw std::invalid_argument("no traces found");
  const int b = traces.front().meta.bits;

  std::vector<std::pair<std::string, Representation>> reps;
  reps.emplace_back("twos_complement", TwosComplement{b});
  if (!opt.code.empty()) {
    reps.emplace_back(opt.code, canonical_map(parse_code_id(opt.code)));
  } else {
    for (CodeId id : kAllCodeIds)
      if (catalogued_parameters(id).bits == b) reps.emplace_back(std::string(to_string(id)), canonical_map(id));
  }
  for (const auto& [name, rep] : reps)
    if (representation_bits(rep) != b) throw std::invalid_argument(name + " does not protect " + std::to_string(b) + "-bit weights");

  if (opt.format == "csv") {
    std::string text = "trace";
    for (const auto& [name, rep] : reps) text += "," + name;
    text += "\n";
    for (std::size_t i = 0; i < traces.size(); ++i) {
      text += names[i];
      for (const auto& [name, rep] : reps) text += "," + std::to_string(cost_of_trace(traces[i], rep));
      text += "\n";
    }
    emit(opt, out, text);
    return kExitOk;
  }

  ordered_json doc;
  doc["traces"] = traces.size();
  doc["b"] = b;
  const CostStats base = trace_stats(traces, reps.front().second);
  ordered_json costs = ordered_json::object();
  for (const auto& [name, rep] : reps) {
    const CostStats s = trace_stats(traces, rep);
    ordered_json entry = stats_json(s);
    if (base.avg.numerator() != 0) entry["avg_ratio"] = (s.avg / base.avg).to_string();
    entry["estimated_hammer_seconds_avg"] = s.avg.to_double() / kHammerBitsPerSecond;
    costs[name] = std::move(entry);
    err << std::left << std::setw(16) << name << " min/avg/max flips " << stats_text(s) << "\n";
  }
  doc["costs"] = std::move(costs);
  ordered_json per_trace = ordered_json::array();
  for (std::size_t i = 0; i < traces.size(); ++i) {
    ordered_json t{{"name", names[i]}, {"method", traces[i].meta.method}, {"changes", traces[i].changes.size()}};
    for (const auto& [name, rep] : reps) t[name] = cost_of_trace(traces[i], rep);
    per_trace.push_back(std::move(t));
  }
  doc["per_trace"] = std::move(per_trace);
  if (b <= 8) {
    const PairFrequency freq = pair_frequency(traces, b);
    ordered_json rows = ordered_json::array();
    const std::size_t dim = std::size_t{1} << b;
    for (std::size_t r = 0; r < dim; ++r)
      rows.push_back(std::vector<std::uint64_t>(freq.counts().begin() + static_cast<std::ptrdiff_t>(r * dim),
                                                freq.counts().begin() + static_cast<std::ptrdiff_t>((r + 1) * dim)));
    doc["pair_frequency"] = std::move(rows);
  }
  emit(opt, out, doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  const int b = opt.bits == 0 ? 4 : opt.bits;
  SynthesisParams params = default_synthesis(b, opt.changes, opt.seed);
  if (opt.msb_fraction) params.msb_fraction = *opt.msb_fraction;
  if (!opt.trace_dir.empty()) {
    fs::create_directories(opt.trace_dir);
    for (std::size_t i = 0; i < opt.count; ++i) {
      params.seed = opt.seed + i;
      std::ostringstream name;
      name << "trace_" << std::setw(4) << std::setfill('0') << i << ".json";
      write_file((fs::path(opt.trace_dir) / name.str()).string(), serialize_trace(synthesize_trace(params)));
    }
    err << "wrote " << opt.count << " traces of " << opt.changes << " changes to " << opt.trace_dir << "\n";
    return kExitOk;
  }
  emit(opt, out, serialize_trace(synthesize_trace(params)));
  return kExitOk;
}

int cmd_overhead(const Options& opt, std::ostream& out, std::ostream&) {
  std::vector<CodeId> ids;
  if (!opt.code.empty())
    ids.push_back(parse_code_id(opt.code));
  else
    ids.assign(std::begin(kAllCodeIds), std::end(kAllCodeIds));
  std::ostringstream text;
  const bool csv = opt.format == "csv";
  if (!csv && opt.format != "table") throw std::invalid_argument("unknown format '" + opt.format + "'");
  if (csv)
    text << "code,b,bits_per_weight,memory_overhead_percent\n";
  else
    text << std::left << std::setw(8) << "code" << std::setw(4) << "b" << std::setw(17) << "bits_per_weight"
         << "memory_overhead_percent\n";
  for (CodeId id : ids) {
    const int b = opt.bits != 0 ? opt.bits : catalogued_parameters(id).bits;
    const OverheadReport r = overhead_report(id, b);
    if (csv)
      text << to_string(id) << ',' << b << ',' << r.bits_per_weight << ',' << r.memory_overhead_percent.to_string() << "\n";
    else
      text << std::left << std::setw(8) << to_string(id) << std::setw(4) << b << std::setw(17) << r.bits_per_weight
           << r.memory_overhead_percent.to_string() << "\n";
  }
  emit(opt, out, text.str());
  return kExitOk;
}

int cmd_bench(const Options& opt, std::ostream& out, std::ostream& err) {
  using clock = std::chrono::steady_clock;
  const CodeId id = parse_code_id(opt.code.empty() ? "C8_4" : opt.code);
  const EncodingMap map = canonical_map(id);
  const std::size_t count = opt.count > 1 ? opt.count : (std::size_t{1} << 22);
  DeterministicRng rng(opt.seed);
  std::vector<std::int32_t> values(count);
  for (auto& v : values) v = map.min_value() + static_cast<std::int32_t>(rng.below(std::uint64_t{1} << map.bits()));
  const EncodedBlob blob = encode_tensor(map, id, values, opt.layer);

  auto seconds_since = [](clock::time_point start) {
    return std::chrono::duration<double>(clock::now() - start).count();
  };
  std::ostringstream text;
  text << "stage,kernel,weights,seconds\n";
  auto t0 = clock::now();
  const std::vector<std::uint64_t> words = unpack_words(blob.payload, count, map.length());
  text << "unpack,scalar," << count << ',' << seconds_since(t0) << "\n";

  std::vector<const kernels::KernelTable*> tables{&kernels::scalar()};
  if (const auto* wide = kernels::avx2()) tables.push_back(wide);
  std::vector<std::uint8_t> flags(words.size());
  for (const auto* table : tables) {
    t0 = clock::now();
    const std::size_t flagged = table->syndrome_flags(words, map.code().parity_check(), flags);
    text << "syndrome," << table->name << ',' << count << ',' << seconds_since(t0) << "\n";
    if (flagged != 0) throw std::logic_error("bench tensor unexpectedly flagged as corrupt");
  }
  t0 = clock::now();
  const TensorDecode decoded = decode_tensor(map, id, blob);
  text << "decode_tensor," << kernels::active().name << ',' << count << ',' << seconds_since(t0) << "\n";
  if (!std::holds_alternative<std::vector<std::int32_t>>(decoded)) throw std::logic_error("bench decode failed");
  emit(opt, out, text.str());
  err << "bench: " << count << " weights, " << to_string(id) << ", active kernels " << kernels::active().name << "\n";
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Protect quantized weights with distance-maximizing binary codes", "dncode"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::string> code_names{"C7_3", "C8_4", "C9_4", "C12_3", "C13_4", "C14_4"};
  auto code_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--code", opt.code, "Protection code")->check(CLI::IsMember(code_names));
    if (required) o->required();
  };
  auto bits_opt = [&](CLI::App* sub) {
    sub->add_option("--bits", opt.bits, "Quantization bit width")->check(CLI::IsMember({4, 8}));
  };
  auto format_opt = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"table", "csv"}));
  };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", opt.out, "Output file"); };

  auto* codebook = app.add_subcommand("codebook", "Print the codeword for each value, most negative first");
  code_opt(codebook, true);
  out_opt(codebook);

  auto* distances = app.add_subcommand("distances", "Bit flips needed between every pair of values");
  code_opt(distances, false);
  bits_opt(distances);
  format_opt(distances);
  out_opt(distances);

  auto* encode = app.add_subcommand("encode", "Encode a weight tensor into a protected blob");
  code_opt(encode, true);
  encode->add_option("--in", opt.in, "Whitespace/comma separated weights")->required();
  out_opt(encode);
  encode->add_option("--layer", opt.layer, "Layer identifier");
  encode->add_option("--delta", opt.delta, "Quantization scale; input is then real-valued")->check(CLI::PositiveNumber);

  auto* decode = app.add_subcommand("decode", "Decode a blob; exits 2 on detected corruption");
  code_opt(decode, true);
  decode->add_option("--in", opt.in, "Blob file")->required();
  out_opt(decode);

  auto* verify = app.add_subcommand("verify", "Detection sweep; exits 2 on detected corruption");
  code_opt(verify, true);
  verify->add_option("--in", opt.in, "Blob file")->required();
  out_opt(verify);

  auto* analyze = app.add_subcommand("analyze-trace", "Attack cost of traces, unprotected vs encoded");
  code_opt(analyze, false);
  analyze->add_option("--in", opt.in, "Trace file");
  analyze->add_option("--trace-dir", opt.trace_dir, "Directory of trace files");
  format_opt(analyze);
  out_opt(analyze);

  auto* simulate = app.add_subcommand("simulate", "Synthesize attack traces");
  bits_opt(simulate);
  simulate->add_option("--changes", opt.changes, "Weight changes per trace")->required();
  simulate->add_option("--msb-fraction", opt.msb_fraction, "Probability the first flip hits the sign bit")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--seed", opt.seed, "RNG seed");
  simulate->add_option("--trace-dir", opt.trace_dir, "Write --count traces here");
  simulate->add_option("--count", opt.count, "Number of traces for --trace-dir");
  out_opt(simulate);

  auto* overhead = app.add_subcommand("overhead", "Memory overhead of each code");
  code_opt(overhead, false);
  bits_opt(overhead);
  format_opt(overhead);
  out_opt(overhead);

  auto* bench = app.add_subcommand("bench", "Time the verify/decode path");
  code_opt(bench, false);
  bench->add_option("--count", opt.count, "Number of weights");
  bench->add_option("--seed", opt.seed, "RNG seed");
  out_opt(bench);

  std::vector<std::string> argv_store{"dncode"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (codebook->parsed()) return cmd_codebook(opt, out, err);
    if (distances->parsed()) return cmd_distances(opt, out, err);
    if (encode->parsed()) return cmd_encode(opt, out, err);
    if (decode->parsed()) return cmd_decode(opt, out, err);
    if (verify->parsed()) return cmd_verify(opt, out, err);
    if (analyze->parsed()) return cmd_analyze(opt, out, err);
    if (simulate->parsed()) return cmd_simulate(opt, out, err);
    if (overhead->parsed()) return cmd_overhead(opt, out, err);
    if (bench->parsed()) return cmd_bench(opt, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace dncode::cli
