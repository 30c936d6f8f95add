#include "stegvault/session.hpp"

#include <algorithm>

#include "stegvault/errors.hpp"
#include "stegvault/prng.hpp"

namespace stegvault::crypto {

namespace {

constexpr std::size_t kMinModulusBits = 512;

template <std::size_t N>
void fill_from(SplitMix64& rng, std::array<std::uint8_t, N>& out) {
  static_assert(N == 8);
  std::uint64_t w = rng.next();
  for (std::size_t i = 0; i < N; ++i, w >>= 8) out[i] = static_cast<std::uint8_t>(w);
}

}  // namespace

SessionSecret SessionSecret::generate(std::uint64_t seed) {
  SplitMix64 rng(seed);
  DesBlock key{};
  SessionSecret s;
  fill_from(rng, key);
  s.des_key = DesKey(key);
  fill_from(rng, s.perm_salt);
  fill_from(rng, s.iv);
  return s;
}

std::array<std::uint8_t, SessionSecret::kSize> SessionSecret::to_bytes() const {
  std::array<std::uint8_t, kSize> out{};
  std::copy(des_key.bytes().begin(), des_key.bytes().end(), out.begin());
  std::copy(perm_salt.begin(), perm_salt.end(), out.begin() + 8);
  std::copy(iv.begin(), iv.end(), out.begin() + 16);
  return out;
}

SessionSecret SessionSecret::from_bytes(ByteView bytes) {
  if (bytes.size() != kSize) throw FormatError("session secret must be 24 bytes");
  SessionSecret s;
  s.des_key = DesKey::from_bytes(bytes.first(8));
  std::copy_n(bytes.begin() + 8, 8, s.perm_salt.begin());
  std::copy_n(bytes.begin() + 16, 8, s.iv.begin());
  return s;
}

Bytes KeyFile::serialize() const {
  if (wrapped.empty() || wrapped.size() > 0xFFFF) throw ConfigError("key file: invalid wrapped length");
  Bytes out;
  append(out, as_bytes(kMagic));
  put_le16(out, static_cast<std::uint16_t>(wrapped.size()));
  append(out, wrapped);
  return out;
}

KeyFile KeyFile::parse(ByteView data) {
  ByteReader in(data, "key file");
  const ByteView magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw FormatError("key file: bad magic");
  const std::uint16_t len = in.le16();
  if (len == 0) throw FormatError("key file: empty wrapped secret");
  const ByteView wrapped = in.take(len);
  if (!in.at_end()) throw FormatError("key file: trailing bytes");
  return KeyFile{Bytes(wrapped.begin(), wrapped.end())};
}

KeyFile wrap_session(const SessionSecret& secret, const RsaPublicKey& pub, std::uint64_t rng_seed) {
  if (pub.n <= 0 || mpz_sizeinbase(pub.n.get_mpz_t(), 2) < kMinModulusBits) {
    throw ConfigError("key wrapping needs a modulus of at least 512 bits");
  }
  const std::size_t width = byte_length(pub.n);
  const std::size_t filler_len = width - 3 - SessionSecret::kSize;

  Bytes frame(width, 0);
  frame[1] = 0x02;
  SplitMix64 rng(rng_seed);
  std::size_t pos = 2;
  while (pos < 2 + filler_len) {
    std::uint64_t w = rng.next();
    for (int i = 0; i < 8 && pos < 2 + filler_len; ++i, w >>= 8) {
      const auto b = static_cast<std::uint8_t>(w);
      if (b != 0) frame[pos++] = b;
    }
  }
  frame[pos++] = 0x00;
  const auto blob = secret.to_bytes();
  std::copy(blob.begin(), blob.end(), frame.begin() + static_cast<std::ptrdiff_t>(pos));

  return KeyFile{to_bytes_be(rsa_raw(from_bytes_be(frame), pub.e, pub.n), width)};
}

SessionSecret unwrap_session(const KeyFile& kf, const RsaPrivateKey& priv) {
  const std::size_t width = byte_length(priv.n);
  if (width < 3 + SessionSecret::kSize + 8) throw ConfigError("private key modulus too small");
  if (kf.wrapped.size() != width) throw KeyError("key file does not match the private key size");
  const BigUint c = from_bytes_be(kf.wrapped);
  if (c >= priv.n) throw KeyError("key file does not match the private key");

  const Bytes frame = to_bytes_be(rsa_raw(c, priv.d, priv.n), width);
  const std::size_t sep = width - SessionSecret::kSize - 1;
  const bool filler_ok = std::all_of(frame.begin() + 2, frame.begin() + static_cast<std::ptrdiff_t>(sep),
                                     [](std::uint8_t b) { return b != 0; });
  if (frame[0] != 0x00 || frame[1] != 0x02 || frame[sep] != 0x00 || !filler_ok) {
    throw KeyError("key file does not decrypt under this private key");
  }
  return SessionSecret::from_bytes(ByteView(frame).subspan(sep + 1));
}

}  // namespace stegvault::crypto
