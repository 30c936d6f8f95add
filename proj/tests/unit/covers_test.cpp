#include <gtest/gtest.h>

#include <set>

#include "stegvault/covers.hpp"
#include "stegvault/errors.hpp"
#include "test_support.hpp"

namespace stegvault::covers {
namespace {

using stegvault::testing::read_fixture;

struct CarrierCase {
  const char* name;
  CoverKind kind;
  std::size_t carriers;
  std::size_t file_size;
};

class FixtureCarriers : public ::testing::TestWithParam<CarrierCase> {};

TEST_P(FixtureCarriers, CountAndKind) {
  const auto& c = GetParam();
  const Bytes raw = read_fixture(c.name);
  ASSERT_EQ(raw.size(), c.file_size);
  const CoverObject cover = parse_cover(raw);
  EXPECT_EQ(cover.kind(), c.kind);
  EXPECT_EQ(cover.carrier_count(), c.carriers);
  std::set<std::uint32_t> unique(cover.carriers().begin(), cover.carriers().end());
  EXPECT_EQ(unique.size(), c.carriers);
  for (auto off : cover.carriers()) ASSERT_LT(off, raw.size());
}

INSTANTIATE_TEST_SUITE_P(
    Fixtures, FixtureCarriers,
    ::testing::Values(CarrierCase{"bmp24_4x4.bmp", CoverKind::kBmp24, 48, 102},
                      CarrierCase{"bmp24_3x2_padded.bmp", CoverKind::kBmp24, 18, 78},
                      CarrierCase{"bmp24_64x48.bmp", CoverKind::kBmp24, 9216, 9270},
                      CarrierCase{"bmp24_37x23_topdown.bmp", CoverKind::kBmp24, 2553, 2630},
                      CarrierCase{"bmp24_gap_trailer.bmp", CoverKind::kBmp24, 567, 649},
                      CarrierCase{"wav8_mono_1000.wav", CoverKind::kWavPcm8, 1000, 1044},
                      CarrierCase{"wav16_mono_1000.wav", CoverKind::kWavPcm16, 1000, 2044},
                      CarrierCase{"wav16_stereo_extra.wav", CoverKind::kWavPcm16, 4096, 8286}));

TEST(BmpTest, PaddingBytesAreNotCarriers) {
  const Bytes raw = read_fixture("bmp24_3x2_padded.bmp");
  const CoverObject cover = parse_cover(raw);
  // rows of 9 pixel bytes padded to 12
  const CarrierList& c = cover.carriers();
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(c[i], 54 + i);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(c[9 + i], 66 + i);
  for (std::uint32_t pad : {63u, 64u, 65u, 75u, 76u, 77u}) {
    EXPECT_EQ(raw[pad], 0xAB);
    EXPECT_EQ(std::count(c.begin(), c.end(), pad), 0);
  }
  const auto& info = std::get<ImageInfo>(cover.info());
  EXPECT_EQ(info.width, 3);
  EXPECT_EQ(info.height, 2);
  EXPECT_EQ(info.row_stride, 12u);
  EXPECT_FALSE(info.top_down);
}

TEST(BmpTest, TopDownAndGapLayouts) {
  const CoverObject td = parse_cover(read_fixture("bmp24_37x23_topdown.bmp"));
  const auto& info = std::get<ImageInfo>(td.info());
  EXPECT_TRUE(info.top_down);
  EXPECT_EQ(info.height, 23);
  EXPECT_EQ(info.row_stride, 112u);

  const CoverObject gap = parse_cover(read_fixture("bmp24_gap_trailer.bmp"));
  EXPECT_EQ(gap.carriers().front(), 60u);
  EXPECT_EQ(std::get<ImageInfo>(gap.info()).pixel_offset, 60u);
  // trailer is not part of the pixel array
  EXPECT_LT(gap.carriers().back(), 649u - 13u);
}

TEST(WavTest, SixteenBitCarriersAreLowBytes) {
  const CoverObject mono = parse_cover(read_fixture("wav16_mono_1000.wav"));
  const auto& info = std::get<AudioInfo>(mono.info());
  EXPECT_EQ(info.data_offset, 44u);
  EXPECT_EQ(info.data_size, 2000u);
  for (std::size_t i = 0; i < 1000; ++i) ASSERT_EQ(mono.carriers()[i], 44 + 2 * i);

  const CoverObject stereo = parse_cover(read_fixture("wav16_stereo_extra.wav"));
  const auto& sinfo = std::get<AudioInfo>(stereo.info());
  EXPECT_EQ(sinfo.channels, 2);
  EXPECT_EQ(sinfo.data_size, 8192u);
  EXPECT_EQ(stereo.carriers().front(), sinfo.data_offset);
  const Bytes& raw = stereo.raw();
  EXPECT_EQ(std::string(raw.begin() + sinfo.data_offset - 8, raw.begin() + sinfo.data_offset - 4), "data");
}

TEST(WavTest, EightBitEveryByteIsCarrier) {
  const CoverObject c = parse_cover(read_fixture("wav8_mono_1000.wav"));
  for (std::size_t i = 0; i < 1000; ++i) ASSERT_EQ(c.carriers()[i], 44 + i);
}

TEST(CoversTest, SerializeIsLossless) {
  for (const auto& name : stegvault::testing::valid_cover_fixtures()) {
    const Bytes raw = read_fixture(name);
    EXPECT_EQ(serialize_cover(parse_cover(raw)), raw) << name;
  }
}

TEST(CoversTest, CarrierWriteTouchesOneByte) {
  for (const auto& name : stegvault::testing::valid_cover_fixtures()) {
    const Bytes raw = read_fixture(name);
    CoverObject cover = parse_cover(raw);
    const std::size_t idx = cover.carrier_count() / 2;
    cover.set_carrier_byte(idx, cover.carrier_byte(idx) ^ 1);
    const Bytes& out = serialize_cover(cover);
    std::size_t diffs = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) diffs += raw[i] != out[i];
    EXPECT_EQ(diffs, 1u) << name;
    EXPECT_EQ(out[cover.carriers()[idx]], raw[cover.carriers()[idx]] ^ 1);
  }
}

TEST(CoversTest, RejectsUnsupportedFormats) {
  for (const char* name : {"reject_bmp8_palette.bmp", "reject_bmp24_compressed.bmp", "reject_wav_float.wav",
                           "reject_wav24.wav", "reject_image.png"}) {
    EXPECT_THROW(parse_cover(read_fixture(name)), UnsupportedCoverError) << name;
  }
}

TEST(CoversTest, RejectsMalformedInput) {
  EXPECT_THROW(parse_cover(read_fixture("malformed_truncated.bmp")), FormatError);
  EXPECT_THROW(parse_cover(Bytes{}), FormatError);
  EXPECT_THROW(parse_cover(Bytes{'B', 'M'}), FormatError);
  const Bytes wav = read_fixture("wav16_mono_1000.wav");
  EXPECT_THROW(parse_cover(Bytes(wav.begin(), wav.begin() + 100)), FormatError);
  EXPECT_THROW(parse_cover(Bytes(wav.begin(), wav.begin() + 40)), FormatError);
  const Bytes bmp = read_fixture("bmp24_4x4.bmp");
  for (std::size_t len = 0; len < bmp.size(); len += 5) {
    EXPECT_ANY_THROW(parse_cover(Bytes(bmp.begin(), bmp.begin() + len))) << len;
  }
  // pixel offset past end of file
  Bytes bad = bmp;
  bad[10] = 0x88;
  bad[11] = 0x13;  // 5000
  EXPECT_THROW(parse_cover(bad), FormatError);
}

TEST(CoversTest, TruncationNeverCrashes) {
  SplitMix64 rng(11);
  for (const auto& name : stegvault::testing::valid_cover_fixtures()) {
    const Bytes raw = read_fixture(name);
    for (int i = 0; i < 50; ++i) {
      const std::size_t len = rng.next() % raw.size();
      try {
        (void)parse_cover(Bytes(raw.begin(), raw.begin() + len));
      } catch (const Error&) {
      }
    }
  }
}

TEST(CapacityTest, FormulaValues) {
  EXPECT_EQ(payload_capacity(30000, 1), 3726u);
  EXPECT_EQ(payload_capacity(30000, 2), 7452u);
  EXPECT_EQ(payload_capacity(100, 1), 0u);
  EXPECT_EQ(payload_capacity(192, 2), 0u);
  EXPECT_EQ(payload_capacity(200, 1), 1u);
  const CoverObject cover = parse_cover(synthesize_bmp24(100, 100, 1));
  const auto c1 = capacity(cover, 1);
  EXPECT_EQ(c1.carrier_count, 30000u);
  EXPECT_EQ(c1.header_cost_bytes, 192u);
  EXPECT_EQ(c1.payload_capacity_bytes, 3726u);
  EXPECT_EQ(capacity(cover, 2).payload_capacity_bytes, 7452u);
  EXPECT_THROW(capacity(cover, 0), ConfigError);
  EXPECT_THROW(capacity(cover, 3), ConfigError);
}

TEST(CapacityTest, MonotoneInCarrierCount) {
  for (int k : {1, 2}) {
    std::uint64_t prev = 0;
    for (std::uint64_t n = 0; n < 5000; ++n) {
      const auto cap = payload_capacity(n, k);
      ASSERT_GE(cap, prev);
      ASSERT_LE(cap * 8, (n > 192 ? n - 192 : 0) * static_cast<std::uint64_t>(k));
      prev = cap;
    }
  }
}

TEST(SynthTest, SynthesizedCoversParse) {
  const CoverObject bmp = parse_cover(synthesize_bmp24(17, 5, 3));
  EXPECT_EQ(bmp.carrier_count(), 17u * 5 * 3);
  EXPECT_EQ(bmp.raw().size(), 54u + 52 * 5);
  const CoverObject w8 = parse_cover(synthesize_wav(8, 2, 300, 4));
  EXPECT_EQ(w8.kind(), CoverKind::kWavPcm8);
  EXPECT_EQ(w8.carrier_count(), 600u);
  const CoverObject w16 = parse_cover(synthesize_wav(16, 1, 300, 4));
  EXPECT_EQ(w16.kind(), CoverKind::kWavPcm16);
  EXPECT_EQ(w16.carrier_count(), 300u);
  EXPECT_EQ(synthesize_bmp24(8, 8, 9), synthesize_bmp24(8, 8, 9));
  EXPECT_NE(synthesize_bmp24(8, 8, 9), synthesize_bmp24(8, 8, 10));
}

TEST(CoversTest, SameShape) {
  const CoverObject a = parse_cover(read_fixture("bmp24_4x4.bmp"));
  CoverObject b = a;
  b.set_carrier_byte(0, 0);
  EXPECT_TRUE(a.same_shape(b));
  EXPECT_FALSE(a.same_shape(parse_cover(read_fixture("bmp24_3x2_padded.bmp"))));
}

}  // namespace
}  // namespace stegvault::covers
