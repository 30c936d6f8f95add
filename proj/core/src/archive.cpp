#include "stegvault/archive.hpp"

#include <algorithm>
#include <set>

#include "stegvault/crc32.hpp"
#include "stegvault/errors.hpp"

namespace stegvault::archive {

namespace {

constexpr std::size_t kFixedHeader = 8;
constexpr std::size_t kEntryOverhead = 2 + 8 + 4;

}  // namespace

ArchiveEntry ArchiveEntry::make(std::string path, Bytes payload) {
  ArchiveEntry e{std::move(path), std::move(payload), 0};
  e.crc32 = stegvault::crc32(e.payload);
  return e;
}

bool is_safe_path(std::string_view path) noexcept {
  if (path.empty() || path.size() > kMaxPathBytes) return false;
  if (path.front() == '/') return false;
  // "C:" style drive prefixes are absolute on Windows.
  if (path.size() >= 2 && path[1] == ':') return false;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    const std::string_view segment = path.substr(start, end - start);
    if (segment.empty() || segment == "." || segment == "..") return false;
    for (const char c : segment) {
      if (c == '\0' || c == '\\') return false;
    }
    start = end + 1;
  }
  return true;
}

std::uint64_t packed_size(const std::vector<ArchiveEntry>& entries) noexcept {
  std::uint64_t total = kFixedHeader;
  for (const auto& e : entries) total += kEntryOverhead + e.path.size() + e.payload.size();
  return total;
}

Bytes pack(const std::vector<ArchiveEntry>& entries) {
  if (entries.size() > 0xFFFFFFFFu) throw ConfigError("archive: too many entries");
  std::set<std::string_view> seen;
  for (const auto& e : entries) {
    if (!is_safe_path(e.path)) throw ConfigError("archive: invalid entry path '" + e.path + "'");
    if (!seen.insert(e.path).second) throw ConfigError("archive: duplicate entry path '" + e.path + "'");
    if (e.crc32 != stegvault::crc32(e.payload)) {
      throw ConfigError("archive: stale checksum for '" + e.path + "'");
    }
  }

  Bytes out;
  out.reserve(packed_size(entries));
  append(out, as_bytes(kMagic));
  put_le32(out, static_cast<std::uint32_t>(entries.size()));
  for (const auto& e : entries) {
    put_le16(out, static_cast<std::uint16_t>(e.path.size()));
    append(out, as_bytes(e.path));
    put_le64(out, e.payload.size());
    put_le32(out, e.crc32);
    append(out, e.payload);
  }
  return out;
}

std::vector<ArchiveEntry> unpack(ByteView blob) {
  ByteReader in(blob, "archive");
  const ByteView magic = in.take(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw FormatError("archive: bad magic");
  }
  const std::uint32_t count = in.le32();
  // Every entry costs at least 15 bytes; reject absurd counts before reserving.
  if (count > in.remaining() / (kEntryOverhead + 1)) throw FormatError("archive: truncated entry table");

  std::vector<ArchiveEntry> entries;
  entries.reserve(count);
  std::set<std::string> seen;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint16_t path_len = in.le16();
    const ByteView path_bytes = in.take(path_len);
    std::string path(path_bytes.begin(), path_bytes.end());
    if (!is_safe_path(path)) throw UnsafePathError("archive: unsafe entry path '" + path + "'");
    if (!seen.insert(path).second) throw FormatError("archive: duplicate entry path '" + path + "'");
    const std::uint64_t size = in.le64();
    const std::uint32_t crc = in.le32();
    if (size > in.remaining()) throw FormatError("archive: truncated payload for '" + path + "'");
    const ByteView payload = in.take(static_cast<std::size_t>(size));
    if (stegvault::crc32(payload) != crc) throw IntegrityError("archive: CRC mismatch for '" + path + "'");
    entries.push_back({std::move(path), Bytes(payload.begin(), payload.end()), crc});
  }
  if (!in.at_end()) throw FormatError("archive: trailing bytes after last entry");
  return entries;
}

}  // namespace stegvault::archive
