#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "stegvault/bytes.hpp"
#include "stegvault/des.hpp"
#include "stegvault/rsa.hpp"

namespace stegvault::crypto {

using Salt = std::array<std::uint8_t, 8>;

// Per-embed secret: DES key, carrier-permutation salt and CBC IV.
// Serialized as des_key | perm_salt | iv (24 bytes).
struct SessionSecret {
  DesKey des_key;
  Salt perm_salt{};
  DesBlock iv{};

  static constexpr std::size_t kSize = 24;

  static SessionSecret generate(std::uint64_t seed);
  std::array<std::uint8_t, kSize> to_bytes() const;
  static SessionSecret from_bytes(ByteView bytes);

  friend bool operator==(const SessionSecret&, const SessionSecret&) = default;
};

// "SVK1" key file: magic | u16 LE modulus_len | wrapped (modulus_len bytes,
// big-endian RSA ciphertext of the framed secret).
struct KeyFile {
  static constexpr std::string_view kMagic = "SVK1";
  Bytes wrapped;

  Bytes serialize() const;
  // Throws FormatError on bad magic, truncation or trailing bytes.
  static KeyFile parse(ByteView data);
};

// Frames the secret as 00 02 <nonzero filler> 00 <secret> to the modulus byte
// length and encrypts it. Throws ConfigError below a 512-bit modulus.
KeyFile wrap_session(const SessionSecret& secret, const RsaPublicKey& pub, std::uint64_t rng_seed);

// Throws KeyError when the frame does not validate under `priv`.
SessionSecret unwrap_session(const KeyFile& kf, const RsaPrivateKey& priv);

}  // namespace stegvault::crypto
