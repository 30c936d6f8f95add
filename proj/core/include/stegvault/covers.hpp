#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "stegvault/bytes.hpp"

namespace stegvault::covers {

enum class CoverKind { kBmp24, kWavPcm8, kWavPcm16 };

std::string_view to_string(CoverKind kind) noexcept;

struct ImageInfo {
  std::int32_t width = 0;
  std::int32_t height = 0;  // absolute row count
  std::uint16_t bits_per_pixel = 24;
  bool top_down = false;
  std::uint32_t pixel_offset = 0;
  std::uint32_t row_stride = 0;
};

struct AudioInfo {
  std::uint32_t sample_rate = 0;
  std::uint16_t channels = 0;
  std::uint16_t bits_per_sample = 0;
  std::uint32_t data_offset = 0;
  std::uint32_t data_size = 0;
};

using CoverInfo = std::variant<ImageInfo, AudioInfo>;

// Offsets into the raw file; both BMP and RIFF cap files at 4 GiB.
using CarrierList = std::vector<std::uint32_t>;

// A parsed cover file. Holds the complete original bytes plus the ordered
// carrier offsets (pixel channel bytes in file order, or PCM sample low
// bytes). Copies share the immutable carrier list.
class CoverObject {
 public:
  CoverObject(CoverKind kind, Bytes raw, CarrierList carriers, CoverInfo info);

  CoverKind kind() const noexcept { return kind_; }
  const Bytes& raw() const noexcept { return raw_; }
  const CarrierList& carriers() const noexcept { return *carriers_; }
  std::size_t carrier_count() const noexcept { return carriers_->size(); }
  const CoverInfo& info() const noexcept { return info_; }

  std::uint8_t carrier_byte(std::size_t index) const { return raw_[(*carriers_)[index]]; }
  void set_carrier_byte(std::size_t index, std::uint8_t value) { raw_[(*carriers_)[index]] = value; }

  // Same file layout as `other` (kind, size and carrier list).
  bool same_shape(const CoverObject& other) const noexcept;

 private:
  CoverKind kind_;
  Bytes raw_;
  std::shared_ptr<const CarrierList> carriers_;
  CoverInfo info_;
};

// Accepts 24-bit uncompressed BMP (40-byte BITMAPINFOHEADER, either row
// order) and RIFF/WAVE PCM at 8 or 16 bits per sample. Throws
// UnsupportedCoverError for other recognised formats and FormatError for
// malformed or truncated headers.
CoverObject parse_cover(Bytes raw);

// Returns the bytes as stored, including headers, row padding and unknown
// chunks.
const Bytes& serialize_cover(const CoverObject& cover) noexcept;

inline constexpr std::uint64_t kHeaderBytes = 24;
inline constexpr std::uint64_t kHeaderCarriers = kHeaderBytes * 8;

struct CoverCapacity {
  std::uint64_t carrier_count = 0;
  std::uint64_t header_cost_bytes = kHeaderCarriers;  // carriers used by the header at 1 bit each
  int bits_per_carrier = 1;
  std::uint64_t payload_capacity_bytes = 0;
};

std::uint64_t payload_capacity(std::uint64_t carrier_count, int k) noexcept;

// Throws ConfigError unless k is 1 or 2.
CoverCapacity capacity(const CoverObject& cover, int k);

}  // namespace stegvault::covers

namespace stegvault::covers {

// Synthetic covers filled with SplitMix64 noise, for benches and tests.
// Bottom-up 24-bit BMP with the standard 54-byte header.
Bytes synthesize_bmp24(std::uint32_t width, std::uint32_t height, std::uint64_t seed);
// Canonical 44-byte-header PCM WAV, 8 or 16 bits per sample.
Bytes synthesize_wav(int bits_per_sample, std::uint16_t channels, std::uint32_t frames, std::uint64_t seed);

}  // namespace stegvault::covers
