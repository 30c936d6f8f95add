#include "stegvault/stego.hpp"

#include <algorithm>

#include "stegvault/crc32.hpp"
#include "stegvault/errors.hpp"

namespace stegvault::stego {

namespace {

using covers::kHeaderBytes;
using covers::kHeaderCarriers;

constexpr std::size_t kHeaderCrcOffset = 20;

void check_domain(const covers::CoverObject& cover, const PermutationSpec& spec) {
  const std::uint64_t count = cover.carrier_count();
  const std::uint64_t expected = count > kHeaderCarriers ? count - kHeaderCarriers : 0;
  if (spec.domain_size != expected) {
    throw ConfigError("permutation domain " + std::to_string(spec.domain_size) + " does not match the cover's " +
                      std::to_string(expected) + " payload slots");
  }
}

}  // namespace

std::array<std::uint8_t, kHeaderBytes> StegoHeader::encode() const {
  Bytes out;
  out.reserve(kHeaderBytes);
  out.insert(out.end(), kHeaderMagic.begin(), kHeaderMagic.end());
  out.push_back(version);
  out.push_back(bits_per_carrier);
  out.push_back(flags);
  out.push_back(0);  // reserved
  put_le64(out, payload_len);
  put_le32(out, payload_crc32);
  put_le32(out, crc32(out));

  std::array<std::uint8_t, kHeaderBytes> fixed{};
  std::copy(out.begin(), out.end(), fixed.begin());
  return fixed;
}

StegoHeader StegoHeader::decode(ByteView bytes) {
  if (bytes.size() != kHeaderBytes) throw NotStegoError("stego header must be 24 bytes");
  if (!std::equal(kHeaderMagic.begin(), kHeaderMagic.end(), bytes.begin())) {
    throw NotStegoError("no stego header found");
  }
  if (crc32(bytes.first(kHeaderCrcOffset)) != load_le32(bytes.data() + kHeaderCrcOffset)) {
    throw NotStegoError("stego header checksum mismatch");
  }
  StegoHeader h;
  h.version = bytes[4];
  h.bits_per_carrier = bytes[5];
  h.flags = bytes[6];
  h.payload_len = load_le64(bytes.data() + 8);
  h.payload_crc32 = load_le32(bytes.data() + 16);
  if (h.version != kHeaderVersion) throw NotStegoError("unsupported stego header version " + std::to_string(h.version));
  if (h.bits_per_carrier != 1 && h.bits_per_carrier != 2) throw NotStegoError("stego header has invalid k");
  if (bytes[7] != 0) throw NotStegoError("stego header reserved byte is not zero");
  return h;
}

covers::CoverObject embed(const covers::CoverObject& cover, ByteView ciphertext, int k,
                          const PermutationSpec& spec, bool encrypted) {
  if (k != 1 && k != 2) throw ConfigError("bits per carrier must be 1 or 2");
  check_domain(cover, spec);
  const std::uint64_t have = covers::payload_capacity(cover.carrier_count(), k);
  if (cover.carrier_count() < kHeaderCarriers || ciphertext.size() > have) {
    throw CapacityError(ciphertext.size(), have);
  }

  StegoHeader header;
  header.bits_per_carrier = static_cast<std::uint8_t>(k);
  header.flags = encrypted ? kFlagEncrypted : 0;
  header.payload_len = ciphertext.size();
  header.payload_crc32 = crc32(ciphertext);
  const auto header_bytes = header.encode();

  covers::CoverObject stego = cover;
  for (std::size_t i = 0; i < kHeaderCarriers; ++i) {
    const unsigned bit = (header_bytes[i / 8] >> (7 - i % 8)) & 1u;
    stego.set_carrier_byte(i, replace_low_bits(stego.carrier_byte(i), bit, 1));
  }

  if (ciphertext.empty()) return stego;
  const auto order = derive_permutation(spec);
  const std::uint64_t total_bits = std::uint64_t{ciphertext.size()} * 8;
  std::uint64_t bit = 0;
  for (std::size_t slot = 0; bit < total_bits; ++slot) {
    unsigned group = 0;
    for (int t = 0; t < k; ++t, ++bit) {
      group = (group << 1) | ((ciphertext[bit >> 3] >> (7 - (bit & 7))) & 1u);
    }
    const std::size_t carrier = kHeaderCarriers + order[slot];
    stego.set_carrier_byte(carrier, replace_low_bits(stego.carrier_byte(carrier), group, static_cast<unsigned>(k)));
  }
  return stego;
}

StegoHeader read_header(const covers::CoverObject& stego) {
  if (stego.carrier_count() < kHeaderCarriers) throw NotStegoError("cover too small to hold a stego header");
  std::array<std::uint8_t, kHeaderBytes> bytes{};
  for (std::size_t i = 0; i < kHeaderCarriers; ++i) {
    bytes[i / 8] = static_cast<std::uint8_t>((bytes[i / 8] << 1) | (stego.carrier_byte(i) & 1u));
  }
  return StegoHeader::decode(bytes);
}

Extracted extract_with_header(const covers::CoverObject& stego, const PermutationSpec& spec) {
  const StegoHeader header = read_header(stego);
  const int k = header.bits_per_carrier;
  const std::uint64_t have = covers::payload_capacity(stego.carrier_count(), k);
  if (header.payload_len > have) {
    throw FormatError("stego header claims " + std::to_string(header.payload_len) + " bytes but cover holds " +
                      std::to_string(have));
  }
  check_domain(stego, spec);

  Bytes payload(static_cast<std::size_t>(header.payload_len), 0);
  if (!payload.empty()) {
    const auto order = derive_permutation(spec);
    const unsigned mask = (1u << k) - 1u;
    const std::uint64_t total_bits = header.payload_len * 8;
    std::uint64_t bit = 0;
    for (std::size_t slot = 0; bit < total_bits; ++slot) {
      const unsigned group = stego.carrier_byte(kHeaderCarriers + order[slot]) & mask;
      for (int t = k - 1; t >= 0; --t, ++bit) {
        payload[bit >> 3] = static_cast<std::uint8_t>(payload[bit >> 3] | (((group >> t) & 1u) << (7 - (bit & 7))));
      }
    }
  }
  if (crc32(payload) != header.payload_crc32) {
    throw IntegrityError("payload checksum mismatch (wrong key number, wrong key file, or tampered object)");
  }
  return {header, std::move(payload)};
}

}  // namespace stegvault::stego
