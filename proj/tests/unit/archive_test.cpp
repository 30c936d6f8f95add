#include <gtest/gtest.h>
#include <zlib.h>

#include "stegvault/archive.hpp"
#include "stegvault/crc32.hpp"
#include "stegvault/errors.hpp"
#include "test_support.hpp"

namespace stegvault::archive {
namespace {

using stegvault::testing::random_bytes;
using stegvault::testing::random_tree;

std::uint32_t zlib_crc(ByteView data) {
  return static_cast<std::uint32_t>(::crc32(0L, data.data(), static_cast<uInt>(data.size())));
}

TEST(Crc32Test, EmptyIsZero) { EXPECT_EQ(crc32(ByteView{}), 0u); }

TEST(Crc32Test, CheckValues) {
  // Frozen from zlib.crc32 before the build.
  EXPECT_EQ(crc32(as_bytes("123456789")), 0xCBF43926u);
  EXPECT_EQ(crc32(as_bytes("The quick brown fox jumps over the lazy dog")), 0x414FA339u);
}

TEST(Crc32Test, MatchesZlibOnRandomInput) {
  SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Bytes data = random_bytes(rng, rng.next() % 5000);
    ASSERT_EQ(crc32(data), zlib_crc(data)) << "length " << data.size();
  }
}

TEST(Crc32Test, IncrementalEqualsOneShot) {
  SplitMix64 rng(12);
  const Bytes data = random_bytes(rng, 777);
  const ByteView v(data);
  for (std::size_t cut : {0u, 1u, 100u, 776u, 777u}) {
    EXPECT_EQ(crc32_update(crc32(v.first(cut)), v.subspan(cut)), crc32(v));
  }
}

TEST(ArchivePathTest, SafePaths) {
  EXPECT_TRUE(is_safe_path("a"));
  EXPECT_TRUE(is_safe_path("docs/q1/report.pdf"));
  EXPECT_TRUE(is_safe_path("a b/..c/d.."));
  EXPECT_FALSE(is_safe_path(""));
  EXPECT_FALSE(is_safe_path("/etc/passwd"));
  EXPECT_FALSE(is_safe_path(".."));
  EXPECT_FALSE(is_safe_path("a/../b"));
  EXPECT_FALSE(is_safe_path("a/.."));
  EXPECT_FALSE(is_safe_path("a//b"));
  EXPECT_FALSE(is_safe_path("a/"));
  EXPECT_FALSE(is_safe_path("./a"));
  EXPECT_FALSE(is_safe_path("a\\b"));
  EXPECT_FALSE(is_safe_path("C:evil"));
  EXPECT_FALSE(is_safe_path(std::string("a\0b", 3)));
  EXPECT_TRUE(is_safe_path(std::string(65535, 'x')));
  EXPECT_FALSE(is_safe_path(std::string(65536, 'x')));
}

TEST(ArchivePackTest, EmptyContainer) {
  const Bytes out = pack({});
  EXPECT_EQ(out, (Bytes{'S', 'V', 'A', '1', 0, 0, 0, 0}));
  EXPECT_TRUE(unpack(out).empty());
}

TEST(ArchivePackTest, SingleEntryLayout) {
  const auto e = ArchiveEntry::make("a", {0x42});
  const Bytes out = pack({e});
  ASSERT_EQ(out.size(), 4u + 4 + 2 + 1 + 8 + 4 + 1);
  Bytes expected = {'S', 'V', 'A', '1', 1, 0, 0, 0, 1, 0, 'a', 1, 0, 0, 0, 0, 0, 0, 0};
  put_le32(expected, crc32(Bytes{0x42}));
  expected.push_back(0x42);
  EXPECT_EQ(out, expected);
  EXPECT_EQ(packed_size({e}), out.size());
}

TEST(ArchivePackTest, RejectsInvalidInput) {
  EXPECT_THROW(pack({ArchiveEntry::make("", {})}), ConfigError);
  EXPECT_THROW(pack({ArchiveEntry::make("../x", {})}), ConfigError);
  EXPECT_THROW(pack({ArchiveEntry::make("/x", {})}), ConfigError);
  EXPECT_THROW(pack({ArchiveEntry::make("a", {1}), ArchiveEntry::make("a", {2})}), ConfigError);
  ArchiveEntry stale = ArchiveEntry::make("a", {1, 2, 3});
  stale.payload[0] = 9;
  EXPECT_THROW(pack({stale}), ConfigError);
}

TEST(ArchivePackTest, RoundTripRandomTrees) {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const auto entries = random_tree(rng, 50, 64 * 1024);
    const Bytes blob = pack(entries);
    EXPECT_EQ(blob.size(), packed_size(entries));
    EXPECT_EQ(unpack(blob), entries);
    EXPECT_EQ(pack(entries), blob);
  }
}

TEST(ArchiveUnpackTest, EveryPayloadBitFlipIsDetected) {
  const auto a = ArchiveEntry::make("a.txt", Bytes{'h', 'e', 'l', 'l', 'o'});
  const auto b = ArchiveEntry::make("dir/b", Bytes{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  const Bytes blob = pack({a, b});
  const std::size_t a_payload = 8 + 2 + 5 + 8 + 4;
  const std::size_t b_payload = a_payload + 5 + 2 + 5 + 8 + 4;
  const std::pair<std::size_t, std::size_t> regions[] = {{a_payload, 5}, {b_payload, 10}};
  for (const auto& [start, len] : regions) {
    for (std::size_t i = start; i < start + len; ++i) {
      for (int bit = 0; bit < 8; ++bit) {
        Bytes bad = blob;
        bad[i] ^= static_cast<std::uint8_t>(1u << bit);
        EXPECT_THROW(unpack(bad), IntegrityError) << "byte " << i << " bit " << bit;
      }
    }
  }
}

TEST(ArchiveUnpackTest, CrcErrorNamesThePath) {
  Bytes blob = pack({ArchiveEntry::make("secret/q.pdf", {1, 2, 3})});
  blob.back() ^= 1;
  try {
    unpack(blob);
    FAIL();
  } catch (const IntegrityError& e) {
    EXPECT_NE(std::string(e.what()).find("secret/q.pdf"), std::string::npos);
  }
}

TEST(ArchiveUnpackTest, HostileInput) {
  SplitMix64 rng(5);
  EXPECT_THROW(unpack(random_bytes(rng, 7)), FormatError);
  EXPECT_THROW(unpack(as_bytes("ZIP1\0\0\0\0")), FormatError);

  const Bytes blob = pack({ArchiveEntry::make("a", {1, 2}), ArchiveEntry::make("b/c", {3})});
  for (std::size_t len = 0; len < blob.size(); ++len) {
    EXPECT_THROW(unpack(ByteView(blob).first(len)), FormatError) << "prefix " << len;
  }
  Bytes trailing = blob;
  trailing.push_back(0);
  EXPECT_THROW(unpack(trailing), FormatError);

  Bytes huge_count = pack({});
  huge_count[4] = huge_count[5] = huge_count[6] = huge_count[7] = 0xFF;
  EXPECT_THROW(unpack(huge_count), FormatError);
}

TEST(ArchiveUnpackTest, UnsafePathsAreRejected) {
  for (const std::string path : {"../evil", "/abs", "a/../../x"}) {
    Bytes blob = {'S', 'V', 'A', '1', 1, 0, 0, 0};
    put_le16(blob, static_cast<std::uint16_t>(path.size()));
    append(blob, as_bytes(path));
    put_le64(blob, 1);
    put_le32(blob, crc32(Bytes{7}));
    blob.push_back(7);
    EXPECT_THROW(unpack(blob), UnsafePathError) << path;
  }
}

}  // namespace
}  // namespace stegvault::archive
