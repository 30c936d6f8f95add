#include "bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "stegvault/covers.hpp"
#include "stegvault/des.hpp"
#include "stegvault/prng.hpp"
#include "stegvault/rsa.hpp"
#include "stegvault/session.hpp"
#include "stegvault/stego.hpp"

namespace stegvault::cli {

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double timed(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Bytes random_payload(std::uint64_t size, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Bytes out(static_cast<std::size_t>(size));
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i % 8 == 0) w = rng.next();
    out[i] = static_cast<std::uint8_t>(w >> (8 * (i % 8)));
  }
  return out;
}

// Cover just large enough for `payload_bytes` at k bits per carrier.
covers::CoverObject cover_for(std::uint64_t payload_bytes, int k, std::uint64_t seed) {
  const std::uint64_t carriers = covers::kHeaderCarriers + (payload_bytes * 8 + k - 1) / k;
  const std::uint64_t pixels = (carriers + 2) / 3;
  const auto width = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(pixels))));
  const auto height = static_cast<std::uint32_t>((pixels + width - 1) / width);
  return covers::parse_cover(covers::synthesize_bmp24(width, height, seed));
}

std::uint64_t worst_case_ciphertext(std::uint64_t size, std::size_t modulus_bytes) {
  const std::uint64_t rsa = (size + modulus_bytes - 2) / (modulus_bytes - 1) * modulus_bytes;
  return std::max(rsa, crypto::des_cbc_size(size));
}

}  // namespace

std::optional<BenchMode> parse_bench_mode(std::string_view name) noexcept {
  if (name == "hybrid") return BenchMode::kHybrid;
  if (name == "rsa-direct") return BenchMode::kRsaDirect;
  if (name == "des-only") return BenchMode::kDesOnly;
  return std::nullopt;
}

std::string_view to_string(BenchMode mode) noexcept {
  switch (mode) {
    case BenchMode::kHybrid: return "hybrid";
    case BenchMode::kRsaDirect: return "rsa-direct";
    case BenchMode::kDesOnly: return "des-only";
  }
  return "unknown";
}

std::vector<BenchSample> run_bench(const BenchConfig& config) {
  if (config.repetitions < 1) throw std::invalid_argument("bench: repetitions must be at least 1");
  for (const auto size : config.sizes) {
    if (size == 0) throw std::invalid_argument("bench: payload sizes must be at least 1 byte");
  }

  const auto keys = crypto::rsa_keygen(config.rsa_bits, config.seed);
  const auto pub = keys.public_key();
  const auto priv = keys.private_key();
  const crypto::SessionSecret secret = crypto::SessionSecret::generate(config.seed ^ 0x5E55105EULL);

  std::vector<BenchSample> samples;
  for (const std::uint64_t size : config.sizes) {
    const Bytes payload = random_payload(size, config.seed + size);
    const auto cover = cover_for(worst_case_ciphertext(size, crypto::byte_length(keys.n)), config.k, config.seed);
    const auto spec = stego::PermutationSpec::for_cover(cover, 0xBE4C4u, secret.perm_salt);

    for (const BenchMode mode : config.modes) {
      for (int rep = 0; rep < config.repetitions; ++rep) {
        BenchSample s;
        s.size_bytes = size;
        s.mode = mode;
        s.repetition = rep;

        Bytes ciphertext;
        crypto::KeyFile key_file;
        s.encrypt = timed([&] {
          switch (mode) {
            case BenchMode::kHybrid: {
              const auto fresh = crypto::SessionSecret::generate(config.seed + static_cast<std::uint64_t>(rep));
              key_file = crypto::wrap_session(fresh, pub, config.seed);
              ciphertext = crypto::des_cbc(payload, fresh.des_key, fresh.iv, crypto::Direction::kEncrypt);
              break;
            }
            case BenchMode::kRsaDirect:
              ciphertext = crypto::rsa_encrypt_blocks(payload, pub);
              break;
            case BenchMode::kDesOnly:
              ciphertext = crypto::des_cbc(payload, secret.des_key, secret.iv, crypto::Direction::kEncrypt);
              break;
          }
        });

        covers::CoverObject stego_obj = cover;
        s.embed = timed([&] { stego_obj = stego::embed(cover, ciphertext, config.k, spec); });

        Bytes recovered;
        s.extract = timed([&] { recovered = stego::extract(stego_obj, spec); });

        Bytes plain;
        s.decrypt = timed([&] {
          switch (mode) {
            case BenchMode::kHybrid: {
              const auto fresh = crypto::unwrap_session(key_file, priv);
              plain = crypto::des_cbc(recovered, fresh.des_key, fresh.iv, crypto::Direction::kDecrypt);
              break;
            }
            case BenchMode::kRsaDirect:
              plain = crypto::rsa_decrypt_blocks(recovered, size, priv);
              break;
            case BenchMode::kDesOnly:
              plain = crypto::des_cbc(recovered, secret.des_key, secret.iv, crypto::Direction::kDecrypt);
              break;
          }
        });
        if (plain != payload) throw std::logic_error("bench: round trip mismatch");
        samples.push_back(s);
      }
    }
  }
  return samples;
}

std::string bench_csv(const std::vector<BenchSample>& samples) {
  std::string out(kBenchCsvHeader);
  out += '\n';
  char buf[128];
  for (const auto& s : samples) {
    const std::pair<const char*, double> phases[] = {
        {"encrypt", s.encrypt}, {"embed", s.embed}, {"extract", s.extract}, {"decrypt", s.decrypt}, {"total", s.total()}};
    for (const auto& [phase, seconds] : phases) {
      std::snprintf(buf, sizeof buf, "%llu,%s,%s,%.9f\n", static_cast<unsigned long long>(s.size_bytes),
                    std::string(to_string(s.mode)).c_str(), phase, seconds);
      out += buf;
    }
  }
  return out;
}

std::string bench_table(const std::vector<BenchSample>& samples) {
  struct Acc {
    double crypto = 0, stego = 0, total = 0;
    int n = 0;
  };
  std::map<std::pair<std::uint64_t, int>, Acc> acc;
  for (const auto& s : samples) {
    auto& a = acc[{s.size_bytes, static_cast<int>(s.mode)}];
    a.crypto += s.crypto();
    a.stego += s.embed + s.extract;
    a.total += s.total();
    ++a.n;
  }
  std::string out = "size_bytes   mode         enc+dec (s)   embed+extract (s)   total (s)\n";
  char buf[160];
  for (const auto& [key, a] : acc) {
    std::snprintf(buf, sizeof buf, "%-12llu %-12s %-13.6f %-19.6f %.6f\n", static_cast<unsigned long long>(key.first),
                  std::string(to_string(static_cast<BenchMode>(key.second))).c_str(), a.crypto / a.n, a.stego / a.n,
                  a.total / a.n);
    out += buf;
  }
  return out;
}

}  // namespace stegvault::cli
