#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>

#include "stegvault/bytes.hpp"

// Textbook RSA over GMP integers. Exponentiation and primality testing are
// implemented here on top of GMP's multiply/divide; no padding scheme other
// than the session-wrapping frame in session.hpp. Not semantically secure.
namespace stegvault::crypto {

using BigUint = mpz_class;

inline constexpr std::uint32_t kPublicExponent = 65537;
inline constexpr int kMillerRabinRounds = 40;

struct RsaPublicKey {
  BigUint n;
  BigUint e;
  friend bool operator==(const RsaPublicKey&, const RsaPublicKey&) = default;
};

struct RsaPrivateKey {
  BigUint n;
  BigUint d;
  friend bool operator==(const RsaPrivateKey&, const RsaPrivateKey&) = default;
};

struct RsaKeyPair {
  BigUint n;
  BigUint e;
  BigUint d;
  int bit_length = 0;

  RsaPublicKey public_key() const { return {n, e}; }
  RsaPrivateKey private_key() const { return {n, d}; }
};

bool is_supported_rsa_bits(int bits) noexcept;

// Deterministic in (bit_length, rng_seed). Both primes have their top two bits
// set, so n has exactly bit_length bits. Throws ConfigError for a bit length
// outside {512, 768, 1024, 2048}.
RsaKeyPair rsa_keygen(int bit_length, std::uint64_t rng_seed);

// m^exponent mod n by left-to-right square-and-multiply. Throws ConfigError
// when m >= n or n is zero.
BigUint rsa_raw(const BigUint& m, const BigUint& exponent, const BigUint& n);

// Miller-Rabin with `rounds` random bases drawn from SplitMix64(seed), after
// trial division by small primes.
bool is_probable_prime(const BigUint& candidate, int rounds, std::uint64_t seed);

std::size_t byte_length(const BigUint& v);

// Big-endian magnitude, left-padded with zeros to `width` bytes (or minimal
// if width is 0). Throws ConfigError when v does not fit.
Bytes to_bytes_be(const BigUint& v, std::size_t width = 0);
BigUint from_bytes_be(ByteView bytes);

// Key files. Layout: magic | (u16 LE length | big-endian magnitude) x 2.
// "SVP1" carries (n, e); "SVS1" carries (n, d).
Bytes serialize_public_key(const RsaPublicKey& key);
Bytes serialize_private_key(const RsaPrivateKey& key);
RsaPublicKey parse_public_key(ByteView data);
RsaPrivateKey parse_private_key(ByteView data);

// CRC-32 of n's big-endian bytes, used as a short human-readable fingerprint.
std::uint32_t fingerprint(const BigUint& n);

// Bench-only direct mode: splits `data` into (k-1)-byte chunks (k = byte
// length of n) and encrypts each with rsa_raw into a k-byte block.
Bytes rsa_encrypt_blocks(ByteView data, const RsaPublicKey& key);
Bytes rsa_decrypt_blocks(ByteView data, std::uint64_t plain_len, const RsaPrivateKey& key);

}  // namespace stegvault::crypto
