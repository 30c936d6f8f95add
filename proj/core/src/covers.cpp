#include "stegvault/covers.hpp"

#include <algorithm>
#include <limits>

#include "stegvault/errors.hpp"

namespace stegvault::covers {

namespace {

constexpr std::size_t kBmpFileHeader = 14;
constexpr std::size_t kBmpInfoHeader = 40;
constexpr std::size_t kMinIdentifiable = 12;
constexpr std::uint64_t kMaxFileSize = std::numeric_limits<std::uint32_t>::max();

bool starts_with(const Bytes& raw, std::string_view tag, std::size_t at = 0) {
  if (raw.size() < at + tag.size()) return false;
  return std::equal(tag.begin(), tag.end(), raw.begin() + static_cast<std::ptrdiff_t>(at));
}

CoverObject parse_bmp(Bytes raw) {
  if (raw.size() < kBmpFileHeader + kBmpInfoHeader) throw FormatError("BMP: truncated header");
  const std::uint8_t* p = raw.data();
  const std::uint32_t file_size = load_le32(p + 2);
  const std::uint32_t pixel_offset = load_le32(p + 10);
  const std::uint32_t info_size = load_le32(p + 14);
  const auto width = static_cast<std::int32_t>(load_le32(p + 18));
  const auto height = static_cast<std::int32_t>(load_le32(p + 22));
  const std::uint16_t planes = load_le16(p + 26);
  const std::uint16_t bpp = load_le16(p + 28);
  const std::uint32_t compression = load_le32(p + 30);

  if (info_size != kBmpInfoHeader) {
    throw UnsupportedCoverError("BMP: only the 40-byte BITMAPINFOHEADER is supported (got " +
                                std::to_string(info_size) + ")");
  }
  if (bpp != 24) throw UnsupportedCoverError("BMP: only 24 bits per pixel is supported (got " + std::to_string(bpp) + ")");
  if (compression != 0) throw UnsupportedCoverError("BMP: compressed bitmaps are not supported");
  if (planes != 1) throw FormatError("BMP: plane count must be 1");
  if (width <= 0 || height == 0 || height == std::numeric_limits<std::int32_t>::min()) {
    throw FormatError("BMP: invalid dimensions");
  }
  if (file_size != 0 && file_size > raw.size()) throw FormatError("BMP: file shorter than its declared size");

  const std::uint64_t rows = height < 0 ? -static_cast<std::int64_t>(height) : height;
  const std::uint64_t row_bytes = static_cast<std::uint64_t>(width) * 3;
  const std::uint64_t stride = (row_bytes + 3) & ~std::uint64_t{3};
  const std::uint64_t pixel_end = pixel_offset + stride * rows;
  if (pixel_offset < kBmpFileHeader + kBmpInfoHeader) throw FormatError("BMP: pixel data overlaps headers");
  if (pixel_end > raw.size() || pixel_end > kMaxFileSize) throw FormatError("BMP: truncated pixel data");

  CarrierList carriers;
  carriers.reserve(row_bytes * rows);
  for (std::uint64_t r = 0; r < rows; ++r) {
    const std::uint64_t row_start = pixel_offset + r * stride;
    for (std::uint64_t c = 0; c < row_bytes; ++c) carriers.push_back(static_cast<std::uint32_t>(row_start + c));
  }
  ImageInfo info{width, static_cast<std::int32_t>(rows), bpp, height < 0, pixel_offset,
                 static_cast<std::uint32_t>(stride)};
  return CoverObject(CoverKind::kBmp24, std::move(raw), std::move(carriers), info);
}

CoverObject parse_wav(Bytes raw) {
  const std::uint32_t riff_size = load_le32(raw.data() + 4);
  if (riff_size != 0 && riff_size != 0xFFFFFFFFu && std::uint64_t{riff_size} + 8 > raw.size()) {
    throw FormatError("WAV: file shorter than its RIFF size");
  }

  AudioInfo info;
  bool have_fmt = false;
  bool have_data = false;
  std::uint64_t pos = 12;
  while (pos + 8 <= raw.size() && !have_data) {
    const std::uint8_t* chunk = raw.data() + pos;
    const std::uint32_t size = load_le32(chunk + 4);
    const std::uint64_t body = pos + 8;
    if (body + size > raw.size()) throw FormatError("WAV: truncated chunk");

    if (starts_with(raw, "fmt ", pos)) {
      if (size < 16) throw FormatError("WAV: fmt chunk too short");
      const std::uint16_t format = load_le16(raw.data() + body);
      info.channels = load_le16(raw.data() + body + 2);
      info.sample_rate = load_le32(raw.data() + body + 4);
      info.bits_per_sample = load_le16(raw.data() + body + 14);
      if (format != 1) throw UnsupportedCoverError("WAV: only integer PCM (format 1) is supported (got " + std::to_string(format) + ")");
      if (info.bits_per_sample != 8 && info.bits_per_sample != 16) {
        throw UnsupportedCoverError("WAV: only 8 or 16 bits per sample is supported (got " +
                                    std::to_string(info.bits_per_sample) + ")");
      }
      if (info.channels == 0) throw FormatError("WAV: zero channels");
      have_fmt = true;
    } else if (starts_with(raw, "data", pos)) {
      if (!have_fmt) throw FormatError("WAV: data chunk precedes fmt chunk");
      info.data_offset = static_cast<std::uint32_t>(body);
      info.data_size = size;
      have_data = true;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw FormatError("WAV: missing fmt chunk");
  if (!have_data) throw FormatError("WAV: missing data chunk");

  CarrierList carriers;
  if (info.bits_per_sample == 8) {
    carriers.reserve(info.data_size);
    for (std::uint32_t i = 0; i < info.data_size; ++i) carriers.push_back(info.data_offset + i);
  } else {
    // Little-endian samples: the low byte comes first. A dangling odd byte is not a sample.
    carriers.reserve(info.data_size / 2);
    for (std::uint32_t i = 0; i + 1 < info.data_size; i += 2) carriers.push_back(info.data_offset + i);
  }
  const CoverKind kind = info.bits_per_sample == 8 ? CoverKind::kWavPcm8 : CoverKind::kWavPcm16;
  return CoverObject(kind, std::move(raw), std::move(carriers), info);
}

}  // namespace

std::string_view to_string(CoverKind kind) noexcept {
  switch (kind) {
    case CoverKind::kBmp24: return "bmp24";
    case CoverKind::kWavPcm8: return "wav-pcm8";
    case CoverKind::kWavPcm16: return "wav-pcm16";
  }
  return "unknown";
}

CoverObject::CoverObject(CoverKind kind, Bytes raw, CarrierList carriers, CoverInfo info)
    : kind_(kind),
      raw_(std::move(raw)),
      carriers_(std::make_shared<const CarrierList>(std::move(carriers))),
      info_(info) {}

bool CoverObject::same_shape(const CoverObject& other) const noexcept {
  return kind_ == other.kind_ && raw_.size() == other.raw_.size() &&
         (carriers_ == other.carriers_ || *carriers_ == *other.carriers_);
}

CoverObject parse_cover(Bytes raw) {
  if (raw.size() < kMinIdentifiable) throw FormatError("cover: file too short to identify");
  if (raw.size() > kMaxFileSize) throw UnsupportedCoverError("cover: files over 4 GiB are not supported");
  if (starts_with(raw, "BM")) return parse_bmp(std::move(raw));
  if (starts_with(raw, "RIFF") && starts_with(raw, "WAVE", 8)) return parse_wav(std::move(raw));
  if (starts_with(raw, "\x89PNG")) throw UnsupportedCoverError("cover: PNG is not supported (use 24-bit BMP)");
  if (raw[0] == 0xFF && raw[1] == 0xD8) throw UnsupportedCoverError("cover: JPEG is lossy and not supported");
  if (starts_with(raw, "ID3") || (raw[0] == 0xFF && (raw[1] & 0xE0) == 0xE0)) {
    throw UnsupportedCoverError("cover: MP3 is lossy and not supported");
  }
  throw UnsupportedCoverError("cover: unrecognised format (expected 24-bit BMP or PCM WAV)");
}

const Bytes& serialize_cover(const CoverObject& cover) noexcept { return cover.raw(); }

std::uint64_t payload_capacity(std::uint64_t carrier_count, int k) noexcept {
  if (carrier_count <= kHeaderCarriers) return 0;
  return (carrier_count - kHeaderCarriers) * static_cast<std::uint64_t>(k) / 8;
}

CoverCapacity capacity(const CoverObject& cover, int k) {
  if (k != 1 && k != 2) throw ConfigError("bits per carrier must be 1 or 2");
  CoverCapacity cap;
  cap.carrier_count = cover.carrier_count();
  cap.bits_per_carrier = k;
  cap.payload_capacity_bytes = payload_capacity(cap.carrier_count, k);
  return cap;
}

}  // namespace stegvault::covers
