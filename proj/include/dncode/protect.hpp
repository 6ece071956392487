#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dncode/code.hpp"
#include "dncode/encoding_map.hpp"
#include "dncode/rational.hpp"

namespace dncode {

inline constexpr char kBlobMagic[8] = {'D', 'N', 'C', 'O', 'D', 'E', '0', '1'};

// Malformed or truncated blob bytes, or a payload that does not match its
// header.
class CorruptBlob : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BlobHeader {
  std::string code_id;
  int bits = 0;
  int length = 0;
  std::uint64_t count = 0;
  std::string layer_id;

  friend bool operator==(const BlobHeader&, const BlobHeader&) = default;
};

// count codewords of `length` bits each, packed MSB-first with no per-word
// padding; the unused low bits of the final byte are zero.
struct EncodedBlob {
  BlobHeader header;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const EncodedBlob&, const EncodedBlob&) = default;
};

std::size_t payload_bytes(std::uint64_t count, int length);

// Bit-packing primitives over an n-bit word stream.
std::vector<std::uint8_t> pack_words(std::span<const std::uint64_t> words, int length);
// Throws CorruptBlob if `bytes` is shorter than count * length bits.
std::vector<std::uint64_t> unpack_words(std::span<const std::uint8_t> bytes, std::uint64_t count,
                                        int length);

// Serialized form: magic, u8 code_id length, code_id, u8 b, u8 n, u64 count,
// u32 layer_id length, layer_id, payload. Integers are big-endian.
std::vector<std::uint8_t> serialize_blob(const EncodedBlob& blob);
EncodedBlob parse_blob(std::span<const std::uint8_t> bytes);

struct VerifyReport {
  bool clean = true;
  std::vector<std::uint64_t> corrupted_indices;
  std::uint64_t scanned = 0;

  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

// Values must fit the map's bit width; std::out_of_range names the index.
EncodedBlob encode_tensor(const EncodingMap& map, CodeId id, std::span<const std::int32_t> values,
                          std::string layer_id);

// Header mismatch throws std::invalid_argument, a short payload CorruptBlob.
VerifyReport verify_blob(const EncodingMap& map, CodeId id, const EncodedBlob& blob);

using TensorDecode = std::variant<std::vector<std::int32_t>, VerifyReport>;
TensorDecode decode_tensor(const EncodingMap& map, CodeId id, const EncodedBlob& blob);

struct OverheadReport {
  Rational memory_overhead_percent;
  int bits_per_weight;
};

// Throws std::invalid_argument unless `bits` matches the code's dimension.
OverheadReport overhead_report(CodeId id, int bits);

// One sidecar line per layer: "layer_id,b,delta".
struct SidecarEntry {
  std::string layer_id;
  int bits;
  double delta;

  friend bool operator==(const SidecarEntry&, const SidecarEntry&) = default;
};

std::string format_sidecar(std::span<const SidecarEntry> entries);
std::vector<SidecarEntry> parse_sidecar(std::string_view text);

}  // namespace dncode
