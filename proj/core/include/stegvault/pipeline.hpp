#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stegvault/archive.hpp"
#include "stegvault/covers.hpp"
#include "stegvault/metrics.hpp"
#include "stegvault/rsa.hpp"
#include "stegvault/session.hpp"
#include "stegvault/stego.hpp"

// End-to-end embed and extract chains:
//
//   files -> SVA1 archive -> DES-CBC (session secret) -> LSB embed
//                            session secret -> RSA wrap -> SVK1 key file
//
// Extraction needs the key number, the key file and the private key; the
// key file's salt and the key number together seed the carrier order.
namespace stegvault::pipeline {

enum class Cipher { kDesHybrid, kNone };

std::optional<Cipher> parse_cipher(std::string_view name) noexcept;
std::string_view to_string(Cipher cipher) noexcept;

struct EmbedParams {
  std::uint64_t key_number = 0;
  int k = 1;
  Cipher cipher = Cipher::kDesHybrid;
  // Fixed seed for reproducible output; system entropy when unset.
  std::optional<std::uint64_t> rng_seed;
};

struct EmbedResult {
  Bytes stego;
  std::optional<Bytes> key_file;  // absent for Cipher::kNone
  Bytes archive;                  // plaintext SVA1 stream
  std::uint64_t payload_bytes = 0;
  std::uint64_t capacity_bytes = 0;
  metrics::DistortionReport distortion;
};

// Bytes that `entries` occupy in the cover under `cipher`.
std::uint64_t embedded_size(const std::vector<archive::ArchiveEntry>& entries, Cipher cipher) noexcept;

// Throws ConfigError when the hybrid cipher is requested without a public
// key, CapacityError when the payload does not fit.
EmbedResult embed_entries(const covers::CoverObject& cover, const std::vector<archive::ArchiveEntry>& entries,
                          const std::optional<crypto::RsaPublicKey>& pub, const EmbedParams& params);

struct ExtractResult {
  stego::StegoHeader header;
  Bytes archive;
  std::vector<archive::ArchiveEntry> entries;
};

// Validates everything (header, key file, payload CRC, padding, archive CRCs
// and paths) before returning; nothing is partially decoded.
ExtractResult extract_entries(const covers::CoverObject& stego, const std::optional<crypto::KeyFile>& key_file,
                              const std::optional<crypto::RsaPrivateKey>& priv, std::uint64_t key_number);

// Regular files under each input. A file contributes its name, a directory
// its name plus the relative path of every file below it. Sorted by path.
std::vector<archive::ArchiveEntry> collect_entries(std::span<const std::filesystem::path> inputs);

// Writes each entry below `dest`, creating directories as needed.
void write_entries(const std::filesystem::path& dest, const std::vector<archive::ArchiveEntry>& entries);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteView data);

}  // namespace stegvault::pipeline
