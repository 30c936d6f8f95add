#include "stegvault/rsa.hpp"

#include <algorithm>
#include <array>

#include "stegvault/crc32.hpp"
#include "stegvault/errors.hpp"
#include "stegvault/prng.hpp"

namespace stegvault::crypto {

namespace {

constexpr std::array<unsigned, 167> make_small_primes() {
  std::array<unsigned, 167> primes{};
  std::size_t count = 0;
  for (unsigned v = 3; count < primes.size(); v += 2) {
    bool prime = true;
    for (unsigned d = 3; d * d <= v; d += 2) {
      if (v % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes[count++] = v;
  }
  return primes;
}

// Odd primes 3 .. 997.
constexpr auto kSmallPrimes = make_small_primes();

BigUint random_bits(SplitMix64& rng, unsigned bits) {
  const unsigned words = (bits + 63) / 64;
  BigUint v = 0;
  for (unsigned i = 0; i < words; ++i) {
    v <<= 64;
    v += BigUint(static_cast<unsigned long>(rng.next()));
  }
  v >>= words * 64 - bits;
  return v;
}

BigUint modmul(const BigUint& a, const BigUint& b, const BigUint& n) {
  BigUint r = a * b;
  mpz_tdiv_r(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
  return r;
}

BigUint modular_inverse(const BigUint& a, const BigUint& m) {
  // Extended Euclid on (a mod m, m).
  BigUint old_r = a % m, r = m;
  BigUint old_s = 1, s = 0;
  while (r != 0) {
    const BigUint q = old_r / r;
    BigUint t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw ConfigError("value has no modular inverse");
  if (old_s < 0) old_s += m;
  return old_s;
}

BigUint generate_prime(SplitMix64& rng, unsigned bits, const BigUint& e) {
  for (;;) {
    BigUint candidate = random_bits(rng, bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);
    mpz_setbit(candidate.get_mpz_t(), bits - 2);
    mpz_setbit(candidate.get_mpz_t(), 0);
    const std::uint64_t witness_seed = rng.next();
    if (!is_probable_prime(candidate, kMillerRabinRounds, witness_seed)) continue;
    if (gcd(BigUint(candidate - 1), e) != 1) continue;
    return candidate;
  }
}

void put_integer(Bytes& out, const BigUint& v) {
  const Bytes mag = to_bytes_be(v);
  if (mag.size() > 0xFFFF) throw ConfigError("integer too large for key file");
  put_le16(out, static_cast<std::uint16_t>(mag.size()));
  append(out, mag);
}

std::pair<BigUint, BigUint> parse_key_file(ByteView data, std::string_view magic, const char* what) {
  ByteReader in(data, what);
  const ByteView m = in.take(4);
  if (!std::equal(m.begin(), m.end(), magic.begin())) throw FormatError(std::string(what) + ": bad magic");
  const std::uint16_t n_len = in.le16();
  BigUint n = from_bytes_be(in.take(n_len));
  const std::uint16_t x_len = in.le16();
  BigUint x = from_bytes_be(in.take(x_len));
  if (!in.at_end()) throw FormatError(std::string(what) + ": trailing bytes");
  if (n < 3 || x == 0) throw FormatError(std::string(what) + ": degenerate key");
  return {std::move(n), std::move(x)};
}

}  // namespace

bool is_supported_rsa_bits(int bits) noexcept {
  return bits == 512 || bits == 768 || bits == 1024 || bits == 2048;
}

BigUint rsa_raw(const BigUint& m, const BigUint& exponent, const BigUint& n) {
  if (n <= 0) throw ConfigError("RSA modulus must be positive");
  if (m < 0 || m >= n) throw ConfigError("RSA message must satisfy 0 <= m < n");
  if (exponent < 0) throw ConfigError("RSA exponent must be non-negative");
  BigUint result = 1;
  if (n == 1) return 0;
  for (long bit = static_cast<long>(mpz_sizeinbase(exponent.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
    result = modmul(result, result, n);
    if (mpz_tstbit(exponent.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) result = modmul(result, m, n);
  }
  return result;
}

bool is_probable_prime(const BigUint& candidate, int rounds, std::uint64_t seed) {
  if (candidate < 2) return false;
  if (candidate == 2) return true;
  if (mpz_even_p(candidate.get_mpz_t())) return false;
  for (const unsigned p : kSmallPrimes) {
    if (candidate == p) return true;
    if (mpz_divisible_ui_p(candidate.get_mpz_t(), p)) return false;
  }

  const BigUint n_minus_1 = candidate - 1;
  BigUint d = n_minus_1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;

  SplitMix64 rng(seed);
  const unsigned bits = static_cast<unsigned>(mpz_sizeinbase(candidate.get_mpz_t(), 2));
  const BigUint span = candidate - 3;  // bases in [2, n-2]
  for (int round = 0; round < rounds; ++round) {
    const BigUint base = random_bits(rng, bits + 64) % span + 2;
    BigUint x = rsa_raw(base, d, candidate);
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (mp_bitcnt_t i = 1; i < s; ++i) {
      x = modmul(x, x, candidate);
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

RsaKeyPair rsa_keygen(int bit_length, std::uint64_t rng_seed) {
  if (!is_supported_rsa_bits(bit_length)) {
    throw ConfigError("unsupported RSA bit length " + std::to_string(bit_length));
  }
  SplitMix64 rng(rng_seed);
  const BigUint e = kPublicExponent;
  const unsigned half = static_cast<unsigned>(bit_length) / 2;
  const BigUint p = generate_prime(rng, half, e);
  BigUint q;
  do {
    q = generate_prime(rng, half, e);
  } while (q == p);

  const BigUint phi_p = p - 1, phi_q = q - 1;
  const BigUint lambda = lcm(phi_p, phi_q);
  RsaKeyPair kp{p * q, e, modular_inverse(e, lambda), bit_length};

  const BigUint probe = 0xC0FFEE;
  if (rsa_raw(rsa_raw(probe, kp.e, kp.n), kp.d, kp.n) != probe) {
    throw std::logic_error("rsa_keygen: generated key failed self-check");
  }
  return kp;
}

std::size_t byte_length(const BigUint& v) {
  if (v == 0) return 0;
  return (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
}

Bytes to_bytes_be(const BigUint& v, std::size_t width) {
  if (v < 0) throw ConfigError("negative integer");
  const std::size_t len = byte_length(v);
  if (width == 0) width = len;
  if (len > width) throw ConfigError("integer does not fit in " + std::to_string(width) + " bytes");
  Bytes out(width, 0);
  if (len > 0) {
    std::size_t written = 0;
    mpz_export(out.data() + (width - len), &written, 1, 1, 1, 0, v.get_mpz_t());
  }
  return out;
}

BigUint from_bytes_be(ByteView bytes) {
  BigUint v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

Bytes serialize_public_key(const RsaPublicKey& key) {
  Bytes out;
  append(out, as_bytes("SVP1"));
  put_integer(out, key.n);
  put_integer(out, key.e);
  return out;
}

Bytes serialize_private_key(const RsaPrivateKey& key) {
  Bytes out;
  append(out, as_bytes("SVS1"));
  put_integer(out, key.n);
  put_integer(out, key.d);
  return out;
}

RsaPublicKey parse_public_key(ByteView data) {
  auto [n, e] = parse_key_file(data, "SVP1", "public key");
  return {std::move(n), std::move(e)};
}

RsaPrivateKey parse_private_key(ByteView data) {
  auto [n, d] = parse_key_file(data, "SVS1", "private key");
  return {std::move(n), std::move(d)};
}

std::uint32_t fingerprint(const BigUint& n) { return crc32(to_bytes_be(n)); }

Bytes rsa_encrypt_blocks(ByteView data, const RsaPublicKey& key) {
  const std::size_t k = byte_length(key.n);
  if (k < 2) throw ConfigError("RSA modulus too small for block mode");
  const std::size_t chunk = k - 1;
  Bytes out;
  out.reserve((data.size() + chunk - 1) / chunk * k);
  for (std::size_t off = 0; off < data.size(); off += chunk) {
    const ByteView piece = data.subspan(off, std::min(chunk, data.size() - off));
    append(out, to_bytes_be(rsa_raw(from_bytes_be(piece), key.e, key.n), k));
  }
  return out;
}

Bytes rsa_decrypt_blocks(ByteView data, std::uint64_t plain_len, const RsaPrivateKey& key) {
  const std::size_t k = byte_length(key.n);
  if (k < 2) throw ConfigError("RSA modulus too small for block mode");
  const std::size_t chunk = k - 1;
  const std::uint64_t blocks = (plain_len + chunk - 1) / chunk;
  if (data.size() != blocks * k) throw FormatError("RSA block ciphertext has wrong length");
  Bytes out;
  out.reserve(plain_len);
  for (std::uint64_t i = 0; i < blocks; ++i) {
    const BigUint c = from_bytes_be(data.subspan(i * k, k));
    if (c >= key.n) throw IntegrityError("RSA block exceeds modulus");
    const std::size_t width = static_cast<std::size_t>(std::min<std::uint64_t>(chunk, plain_len - i * chunk));
    const BigUint m = rsa_raw(c, key.d, key.n);
    if (byte_length(m) > width) throw IntegrityError("RSA block decrypts out of range");
    append(out, to_bytes_be(m, width));
  }
  return out;
}

}  // namespace stegvault::crypto
