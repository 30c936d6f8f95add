#include "stegvault/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "stegvault/errors.hpp"
#include "stegvault/prng.hpp"

namespace stegvault::pipeline {

namespace fs = std::filesystem;

namespace {

struct Seeds {
  std::uint64_t secret;
  std::uint64_t wrap;
};

Seeds draw_seeds(const std::optional<std::uint64_t>& rng_seed) {
  if (rng_seed) {
    SplitMix64 rng(*rng_seed);
    const std::uint64_t secret = rng.next();
    return {secret, rng.next()};
  }
  std::random_device rd;
  auto word = [&rd] { return (static_cast<std::uint64_t>(rd()) << 32) ^ rd(); };
  const std::uint64_t secret = word();
  return {secret, word()};
}

}  // namespace

std::optional<Cipher> parse_cipher(std::string_view name) noexcept {
  if (name == "des-hybrid") return Cipher::kDesHybrid;
  if (name == "none") return Cipher::kNone;
  return std::nullopt;
}

std::string_view to_string(Cipher cipher) noexcept {
  return cipher == Cipher::kDesHybrid ? "des-hybrid" : "none";
}

std::uint64_t embedded_size(const std::vector<archive::ArchiveEntry>& entries, Cipher cipher) noexcept {
  const std::uint64_t packed = archive::packed_size(entries);
  return cipher == Cipher::kDesHybrid ? crypto::des_cbc_size(packed) : packed;
}

EmbedResult embed_entries(const covers::CoverObject& cover, const std::vector<archive::ArchiveEntry>& entries,
                          const std::optional<crypto::RsaPublicKey>& pub, const EmbedParams& params) {
  const auto cap = covers::capacity(cover, params.k);
  const std::uint64_t need = embedded_size(entries, params.cipher);
  if (need > cap.payload_capacity_bytes) throw CapacityError(need, cap.payload_capacity_bytes);
  if (params.cipher == Cipher::kDesHybrid && !pub) throw ConfigError("des-hybrid cipher needs a public key");

  EmbedResult result;
  result.archive = archive::pack(entries);
  result.capacity_bytes = cap.payload_capacity_bytes;

  Bytes payload;
  crypto::Salt salt{};
  if (params.cipher == Cipher::kDesHybrid) {
    const Seeds seeds = draw_seeds(params.rng_seed);
    const auto secret = crypto::SessionSecret::generate(seeds.secret);
    payload = crypto::des_cbc(result.archive, secret.des_key, secret.iv, crypto::Direction::kEncrypt);
    result.key_file = crypto::wrap_session(secret, *pub, seeds.wrap).serialize();
    salt = secret.perm_salt;
  } else {
    payload = result.archive;
  }
  result.payload_bytes = payload.size();

  const auto spec = stego::PermutationSpec::for_cover(cover, params.key_number, salt);
  const auto stego_obj = stego::embed(cover, payload, params.k, spec, params.cipher == Cipher::kDesHybrid);
  result.distortion = metrics::distortion(cover, stego_obj);
  result.stego = covers::serialize_cover(stego_obj);
  return result;
}

ExtractResult extract_entries(const covers::CoverObject& stego_obj, const std::optional<crypto::KeyFile>& key_file,
                              const std::optional<crypto::RsaPrivateKey>& priv, std::uint64_t key_number) {
  ExtractResult result;
  result.header = stego::read_header(stego_obj);

  crypto::Salt salt{};
  std::optional<crypto::SessionSecret> secret;
  if (result.header.encrypted()) {
    if (!key_file || !priv) throw KeyError("encrypted payload: key file and private key are required");
    secret = crypto::unwrap_session(*key_file, *priv);
    salt = secret->perm_salt;
  }

  const auto spec = stego::PermutationSpec::for_cover(stego_obj, key_number, salt);
  Bytes payload = stego::extract(stego_obj, spec);
  if (secret) {
    result.archive = crypto::des_cbc(payload, secret->des_key, secret->iv, crypto::Direction::kDecrypt);
  } else {
    result.archive = std::move(payload);
  }
  result.entries = archive::unpack(result.archive);
  return result;
}

std::vector<archive::ArchiveEntry> collect_entries(std::span<const fs::path> inputs) {
  std::vector<archive::ArchiveEntry> entries;
  for (const fs::path& input : inputs) {
    std::error_code ec;
    const fs::file_status st = fs::status(input, ec);
    if (ec || !fs::exists(st)) throw IoError("input not found: " + input.string());

    fs::path base = fs::absolute(input).lexically_normal();
    if (base.filename().empty()) base = base.parent_path();
    const std::string name = base.filename().generic_string();
    if (name.empty()) throw ConfigError("cannot archive a filesystem root: " + input.string());

    if (fs::is_regular_file(st)) {
      entries.push_back(archive::ArchiveEntry::make(name, read_file(input)));
      continue;
    }
    if (!fs::is_directory(st)) throw IoError("not a regular file or directory: " + input.string());
    for (const auto& item : fs::recursive_directory_iterator(base)) {
      if (!item.is_regular_file()) continue;
      const std::string rel = (fs::path(name) / item.path().lexically_relative(base)).generic_string();
      entries.push_back(archive::ArchiveEntry::make(rel, read_file(item.path())));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].path == entries[i - 1].path) throw ConfigError("duplicate input path '" + entries[i].path + "'");
  }
  return entries;
}

void write_entries(const fs::path& dest, const std::vector<archive::ArchiveEntry>& entries) {
  for (const auto& e : entries) {
    if (!archive::is_safe_path(e.path)) throw UnsafePathError("refusing unsafe path '" + e.path + "'");
  }
  std::error_code ec;
  fs::create_directories(dest, ec);
  if (ec) throw IoError("cannot create " + dest.string() + ": " + ec.message());
  for (const auto& e : entries) {
    const fs::path target = dest / fs::path(e.path);
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw IoError("cannot create " + target.parent_path().string() + ": " + ec.message());
    write_file(target, e.payload);
  }
}

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return data;
}

void write_file(const fs::path& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace stegvault::pipeline
