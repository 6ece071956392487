#include "dncode/protect.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <string>

#include "dncode/kernels.hpp"

namespace dncode {

namespace {

constexpr std::size_t kSweepChunk = 1 << 16;

void put_be(std::vector<std::uint8_t>& out, std::uint64_t value, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t be(int width, const char* field) {
    need(static_cast<std::size_t>(width), field);
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }
  std::string text(std::size_t size, const char* field) {
    need(size, field);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), size);
    pos_ += size;
    return s;
  }
  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

 private:
  void need(std::size_t size, const char* field) const {
    if (bytes_.size() - pos_ < size) throw CorruptBlob(std::string("blob truncated while reading ") + field);
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void check_payload_shape(const EncodedBlob& blob) {
  const std::size_t expected = payload_bytes(blob.header.count, blob.header.length);
  if (blob.payload.size() != expected)
    throw CorruptBlob("payload holds " + std::to_string(blob.payload.size()) + " bytes, header implies " +
                      std::to_string(expected));
  const std::uint64_t used_bits = blob.header.count * static_cast<std::uint64_t>(blob.header.length);
  const int spare = static_cast<int>(expected * 8 - used_bits);
  if (spare > 0 && (blob.payload.back() & static_cast<std::uint8_t>(low_mask(spare))) != 0)
    throw CorruptBlob("nonzero padding bits after the last codeword");
}

void check_header(const EncodingMap& map, CodeId id, const BlobHeader& header) {
  if (header.code_id != to_string(id) || header.bits != map.bits() || header.length != map.length())
    throw std::invalid_argument("blob header (" + header.code_id + ", b=" + std::to_string(header.bits) +
                                ", n=" + std::to_string(header.length) + ") does not match map " +
                                std::string(to_string(id)) + " (b=" + std::to_string(map.bits()) +
                                ", n=" + std::to_string(map.length()) + ")");
  if (header.length < 1 || header.length > kMaxWordLength) throw CorruptBlob("bad code length in header");
}

// Unpacks every word and flags the non-codewords, one chunk at a time.
VerifyReport sweep(const EncodingMap& map, const EncodedBlob& blob, std::vector<std::uint64_t>* words_out) {
  const int n = blob.header.length;
  const std::uint64_t count = blob.header.count;
  const auto& k = kernels::active();
  const auto checks = map.code().parity_check();

  VerifyReport report;
  report.scanned = count;
  std::vector<std::uint64_t> words = unpack_words(blob.payload, count, n);
  std::vector<std::uint8_t> flags(std::min<std::size_t>(kSweepChunk, words.size()));
  for (std::size_t start = 0; start < words.size(); start += kSweepChunk) {
    const std::size_t len = std::min(kSweepChunk, words.size() - start);
    const auto chunk = std::span<const std::uint64_t>(words).subspan(start, len);
    if (k.syndrome_flags(chunk, checks, std::span<std::uint8_t>(flags).first(len)) == 0) continue;
    for (std::size_t i = 0; i < len; ++i)
      if (flags[i]) report.corrupted_indices.push_back(start + i);
  }
  report.clean = report.corrupted_indices.empty();
  if (words_out != nullptr) *words_out = std::move(words);
  return report;
}

}  // namespace

std::size_t payload_bytes(std::uint64_t count, int length) {
  return static_cast<std::size_t>((count * static_cast<std::uint64_t>(length) + 7) / 8);
}

std::vector<std::uint8_t> pack_words(std::span<const std::uint64_t> words, int length) {
  std::vector<std::uint8_t> out;
  out.reserve(payload_bytes(words.size(), length));
  unsigned __int128 acc = 0;
  int filled = 0;
  const std::uint64_t mask = low_mask(length);
  for (std::uint64_t w : words) {
    acc = (acc << length) | (w & mask);
    filled += length;
    while (filled >= 8) {
      filled -= 8;
      out.push_back(static_cast<std::uint8_t>(acc >> filled));
    }
  }
  if (filled > 0) out.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
  return out;
}

std::vector<std::uint64_t> unpack_words(std::span<const std::uint8_t> bytes, std::uint64_t count, int length) {
  if (bytes.size() < payload_bytes(count, length)) throw CorruptBlob("payload shorter than header implies");
  std::vector<std::uint64_t> out(static_cast<std::size_t>(count));
  const std::uint64_t mask = low_mask(length);
  unsigned __int128 acc = 0;
  int avail = 0;
  std::size_t pos = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    while (avail < length) {
      acc = (acc << 8) | bytes[pos++];
      avail += 8;
    }
    avail -= length;
    out[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(acc >> avail) & mask;
  }
  return out;
}

std::vector<std::uint8_t> serialize_blob(const EncodedBlob& blob) {
  const BlobHeader& h = blob.header;
  if (h.code_id.size() > 0xFF) throw std::invalid_argument("code id too long");
  if (h.layer_id.size() > 0xFFFFFFFFu) throw std::invalid_argument("layer id too long");
  std::vector<std::uint8_t> out(std::begin(kBlobMagic), std::end(kBlobMagic));
  put_be(out, h.code_id.size(), 1);
  out.insert(out.end(), h.code_id.begin(), h.code_id.end());
  put_be(out, static_cast<std::uint64_t>(h.bits), 1);
  put_be(out, static_cast<std::uint64_t>(h.length), 1);
  put_be(out, h.count, 8);
  put_be(out, h.layer_id.size(), 4);
  out.insert(out.end(), h.layer_id.begin(), h.layer_id.end());
  out.insert(out.end(), blob.payload.begin(), blob.payload.end());
  return out;
}

EncodedBlob parse_blob(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  if (in.text(sizeof kBlobMagic, "magic") != std::string(kBlobMagic, sizeof kBlobMagic))
    throw CorruptBlob("bad magic (not a protected weight blob)");
  EncodedBlob blob;
  blob.header.code_id = in.text(in.be(1, "code id length"), "code id");
  blob.header.bits = static_cast<int>(in.be(1, "bit width"));
  blob.header.length = static_cast<int>(in.be(1, "code length"));
  blob.header.count = in.be(8, "weight count");
  blob.header.layer_id = in.text(in.be(4, "layer id length"), "layer id");
  if (blob.header.length < 1 || blob.header.length > kMaxWordLength) throw CorruptBlob("bad code length in header");
  if (blob.header.count > (std::uint64_t{1} << 56)) throw CorruptBlob("implausible weight count");
  const auto rest = in.rest();
  blob.payload.assign(rest.begin(), rest.end());
  check_payload_shape(blob);
  return blob;
}

EncodedBlob encode_tensor(const EncodingMap& map, CodeId id, std::span<const std::int32_t> values,
                          std::string layer_id) {
  std::vector<std::uint64_t> words(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < map.min_value() || values[i] > map.max_value())
      throw std::out_of_range("weight " + std::to_string(i) + " = " + std::to_string(values[i]) +
                              " outside the " + std::to_string(map.bits()) + "-bit range");
    words[i] = map.encode(values[i]);
  }
  EncodedBlob blob;
  blob.header = BlobHeader{std::string(to_string(id)), map.bits(), map.length(), values.size(), std::move(layer_id)};
  blob.payload = pack_words(words, map.length());
  return blob;
}

VerifyReport verify_blob(const EncodingMap& map, CodeId id, const EncodedBlob& blob) {
  check_header(map, id, blob.header);
  check_payload_shape(blob);
  return sweep(map, blob, nullptr);
}

TensorDecode decode_tensor(const EncodingMap& map, CodeId id, const EncodedBlob& blob) {
  check_header(map, id, blob.header);
  check_payload_shape(blob);
  std::vector<std::uint64_t> words;
  VerifyReport report = sweep(map, blob, &words);
  if (!report.clean) return report;
  std::vector<std::int32_t> values(words.size());
  for (std::size_t i = 0; i < words.size(); ++i)
    values[i] = signed_from_pattern(static_cast<std::uint64_t>(map.pattern_of(words[i])), map.bits());
  return values;
}

OverheadReport overhead_report(CodeId id, int bits) {
  const CodeParameters p = catalogued_parameters(id);
  if (bits != p.bits)
    throw std::invalid_argument(std::string(to_string(id)) + " protects " + std::to_string(p.bits) +
                                "-bit weights, not " + std::to_string(bits) + "-bit");
  return {Rational(100 * (p.length - bits), bits), p.length};
}

std::string format_sidecar(std::span<const SidecarEntry> entries) {
  std::string out;
  for (const SidecarEntry& e : entries) {
    if (e.layer_id.find_first_of(",\n") != std::string::npos)
      throw std::invalid_argument("layer id may not contain commas or newlines");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, e.delta);
    out += e.layer_id + "," + std::to_string(e.bits) + "," + std::string(buf, res.ptr) + "\n";
  }
  return out;
}

std::vector<SidecarEntry> parse_sidecar(std::string_view text) {
  std::vector<SidecarEntry> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos)
      throw std::invalid_argument("sidecar line " + std::to_string(line_no) + ": expected layer_id,b,delta");
    SidecarEntry e{std::string(line.substr(0, c1)), 0, 0.0};
    const std::string_view bits = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string_view delta = line.substr(c2 + 1);
    const auto rb = std::from_chars(bits.data(), bits.data() + bits.size(), e.bits);
    const auto rd = std::from_chars(delta.data(), delta.data() + delta.size(), e.delta);
    if (rb.ec != std::errc{} || rb.ptr != bits.data() + bits.size() || rd.ec != std::errc{} ||
        rd.ptr != delta.data() + delta.size())
      throw std::invalid_argument("sidecar line " + std::to_string(line_no) + ": bad number");
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace dncode
