#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stegvault/bytes.hpp"

// "SVA1" store-only container. Layout, little-endian throughout:
//
//   "SVA1" | u32 entry_count | entry*
//   entry := u16 path_len | path | u64 payload_len | u32 crc32 | payload
//
// Entries are files only; directories exist implicitly through paths.
namespace stegvault::archive {

inline constexpr std::string_view kMagic = "SVA1";
inline constexpr std::size_t kMaxPathBytes = 65535;

struct ArchiveEntry {
  std::string path;  // forward-slash relative path
  Bytes payload;
  std::uint32_t crc32 = 0;

  // Builds an entry with the checksum computed from `payload`.
  static ArchiveEntry make(std::string path, Bytes payload);

  friend bool operator==(const ArchiveEntry&, const ArchiveEntry&) = default;
};

// True when `path` is non-empty, at most 65535 bytes, relative, free of NUL
// and backslash, and has no empty, "." or ".." segment.
bool is_safe_path(std::string_view path) noexcept;

// Throws ConfigError on an invalid/duplicate path or a stale checksum.
Bytes pack(const std::vector<ArchiveEntry>& entries);

// Throws FormatError (bad magic, truncation, trailing bytes), UnsafePathError
// or IntegrityError (CRC mismatch; message names the path).
std::vector<ArchiveEntry> unpack(ByteView blob);

// Serialized size of `entries` without building the stream.
std::uint64_t packed_size(const std::vector<ArchiveEntry>& entries) noexcept;

}  // namespace stegvault::archive
