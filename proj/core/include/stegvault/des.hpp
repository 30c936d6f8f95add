#pragma once

#include <array>
#include <cstdint>

#include "stegvault/bytes.hpp"

namespace stegvault::crypto {

using DesBlock = std::array<std::uint8_t, 8>;

enum class Direction { kEncrypt, kDecrypt };

// 64-bit DES key; the eight parity bits are ignored by the key schedule.
class DesKey {
 public:
  constexpr DesKey() = default;
  constexpr explicit DesKey(const DesBlock& bytes) : bytes_(bytes) {}
  // Throws ConfigError unless `bytes` is exactly eight bytes long.
  static DesKey from_bytes(ByteView bytes);

  constexpr const DesBlock& bytes() const noexcept { return bytes_; }
  friend bool operator==(const DesKey&, const DesKey&) = default;

 private:
  DesBlock bytes_{};
};

// A DES key with its sixteen round subkeys precomputed.
class DesCipher {
 public:
  explicit DesCipher(const DesKey& key) noexcept;

  std::uint64_t encrypt(std::uint64_t block) const noexcept;
  std::uint64_t decrypt(std::uint64_t block) const noexcept;

 private:
  std::uint64_t crypt(std::uint64_t block, bool decrypt) const noexcept;

  // Each subkey holds the eight 6-bit S-box inputs, one per byte.
  std::array<std::array<std::uint8_t, 8>, 16> subkeys_{};
};

// Single-block FIPS 46-3 DES. Throws ConfigError when `block` is not 8 bytes.
DesBlock des_block(ByteView block, const DesKey& key, Direction direction);

// DES-CBC with always-applied padding (1..8 bytes, each equal to the pad
// count). Decrypt throws FormatError for a length that is not a positive
// multiple of 8 and IntegrityError for an invalid pad.
Bytes des_cbc(ByteView data, const DesKey& key, const DesBlock& iv, Direction direction);

// Ciphertext length des_cbc produces for `plain_len` bytes of input.
constexpr std::uint64_t des_cbc_size(std::uint64_t plain_len) noexcept {
  return (plain_len / 8 + 1) * 8;
}

}  // namespace stegvault::crypto
