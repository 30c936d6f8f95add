#include "stegvault/covers.hpp"
#include "stegvault/errors.hpp"
#include "stegvault/prng.hpp"

namespace stegvault::covers {

namespace {

void put_tag(Bytes& out, std::string_view tag) {
  for (const char c : tag) out.push_back(static_cast<std::uint8_t>(c));
}

void fill_noise(Bytes& out, std::size_t from, std::size_t count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 8 == 0) w = rng.next();
    out[from + i] = static_cast<std::uint8_t>(w >> (8 * (i % 8)));
  }
}

}  // namespace

Bytes synthesize_bmp24(std::uint32_t width, std::uint32_t height, std::uint64_t seed) {
  if (width == 0 || height == 0 || width > 0x7FFFFFFF || height > 0x7FFFFFFF) {
    throw ConfigError("BMP dimensions must be positive");
  }
  const std::uint64_t stride = (std::uint64_t{width} * 3 + 3) & ~std::uint64_t{3};
  const std::uint64_t image = stride * height;
  if (54 + image > 0xFFFFFFFFu) throw ConfigError("BMP too large");

  Bytes out;
  out.reserve(54 + image);
  out.push_back('B');
  out.push_back('M');
  put_le32(out, static_cast<std::uint32_t>(54 + image));
  put_le32(out, 0);
  put_le32(out, 54);
  put_le32(out, 40);
  put_le32(out, width);
  put_le32(out, height);
  put_le16(out, 1);
  put_le16(out, 24);
  put_le32(out, 0);
  put_le32(out, static_cast<std::uint32_t>(image));
  put_le32(out, 2835);
  put_le32(out, 2835);
  put_le32(out, 0);
  put_le32(out, 0);
  out.resize(54 + image, 0);

  for (std::uint32_t r = 0; r < height; ++r) {
    fill_noise(out, 54 + r * stride, std::size_t{width} * 3, seed + r);
  }
  return out;
}

Bytes synthesize_wav(int bits_per_sample, std::uint16_t channels, std::uint32_t frames, std::uint64_t seed) {
  if (bits_per_sample != 8 && bits_per_sample != 16) throw ConfigError("WAV bits per sample must be 8 or 16");
  if (channels == 0) throw ConfigError("WAV needs at least one channel");
  const std::uint64_t block = std::uint64_t{channels} * static_cast<std::uint64_t>(bits_per_sample / 8);
  const std::uint64_t data = block * frames;
  if (data + 44 > 0xFFFFFFFFu) throw ConfigError("WAV too large");
  constexpr std::uint32_t kRate = 8000;

  Bytes out;
  out.reserve(44 + data + (data & 1));
  put_tag(out, "RIFF");
  put_le32(out, static_cast<std::uint32_t>(36 + data + (data & 1)));
  put_tag(out, "WAVEfmt ");
  put_le32(out, 16);
  put_le16(out, 1);
  put_le16(out, channels);
  put_le32(out, kRate);
  put_le32(out, static_cast<std::uint32_t>(kRate * block));
  put_le16(out, static_cast<std::uint16_t>(block));
  put_le16(out, static_cast<std::uint16_t>(bits_per_sample));
  put_tag(out, "data");
  put_le32(out, static_cast<std::uint32_t>(data));
  out.resize(44 + data + (data & 1), 0);
  fill_noise(out, 44, static_cast<std::size_t>(data), seed);
  return out;
}

}  // namespace stegvault::covers
