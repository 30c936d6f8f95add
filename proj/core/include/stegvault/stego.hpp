#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "stegvault/bytes.hpp"
#include "stegvault/covers.hpp"
#include "stegvault/session.hpp"

// LSB embedding. In-carrier layout:
//
//  * carriers [0, 192): the 24-byte StegoHeader, one bit per carrier (LSB),
//    bytes in order, bits MSB-first.
//  * carriers [192, N): payload slots, visited in the keyed permutation
//    order. Each slot takes the next k payload bits (MSB-first stream) in its
//    k low bits, first bit highest.
namespace stegvault::stego {

inline constexpr std::array<std::uint8_t, 4> kHeaderMagic = {'S', 'V', 'H', '1'};
inline constexpr std::uint8_t kHeaderVersion = 1;
inline constexpr std::uint8_t kFlagEncrypted = 0x01;

struct StegoHeader {
  std::uint8_t version = kHeaderVersion;
  std::uint8_t bits_per_carrier = 1;
  std::uint8_t flags = 0;
  std::uint64_t payload_len = 0;
  std::uint32_t payload_crc32 = 0;

  bool encrypted() const noexcept { return (flags & kFlagEncrypted) != 0; }

  std::array<std::uint8_t, covers::kHeaderBytes> encode() const;
  // Throws NotStegoError on bad magic, header CRC, version or k.
  static StegoHeader decode(ByteView bytes);

  friend bool operator==(const StegoHeader&, const StegoHeader&) = default;
};

// Replaces the k low bits of `carrier` with the k low bits of `bits`.
constexpr std::uint8_t replace_low_bits(std::uint8_t carrier, unsigned bits, unsigned k) noexcept {
  const unsigned mask = (1u << k) - 1u;
  return static_cast<std::uint8_t>((carrier & ~mask) | (bits & mask));
}

struct PermutationSpec {
  std::uint64_t key_number = 0;
  crypto::Salt perm_salt{};
  std::uint64_t domain_size = 0;

  // Spec whose domain is the payload slots of `cover`.
  static PermutationSpec for_cover(const covers::CoverObject& cover, std::uint64_t key_number,
                                   const crypto::Salt& salt);
};

// Fisher-Yates over [0, domain_size) driven by SplitMix64 seeded with
// key_number XOR little-endian(perm_salt). Throws ConfigError when the domain
// exceeds 2^32 slots.
std::vector<std::uint32_t> derive_permutation(const PermutationSpec& spec);

// Returns a modified copy of `cover`. Throws ConfigError for k outside {1, 2}
// or a spec domain that does not match the cover, CapacityError when the
// ciphertext does not fit.
covers::CoverObject embed(const covers::CoverObject& cover, ByteView ciphertext, int k,
                          const PermutationSpec& spec, bool encrypted = true);

// Reads the header only. Throws NotStegoError.
StegoHeader read_header(const covers::CoverObject& stego);

struct Extracted {
  StegoHeader header;
  Bytes payload;
};

// Throws NotStegoError, FormatError (payload_len over capacity) or
// IntegrityError (payload CRC mismatch).
Extracted extract_with_header(const covers::CoverObject& stego, const PermutationSpec& spec);

inline Bytes extract(const covers::CoverObject& stego, const PermutationSpec& spec) {
  return extract_with_header(stego, spec).payload;
}

}  // namespace stegvault::stego
