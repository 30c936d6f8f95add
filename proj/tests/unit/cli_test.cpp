#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <sys/wait.h>

#include "bench.hpp"
#include "commands.hpp"
#include "exit_codes.hpp"
#include "stegvault/errors.hpp"
#include "stegvault/pipeline.hpp"
#include "test_support.hpp"

namespace stegvault::cli {
namespace {

namespace fs = std::filesystem;
using stegvault::testing::TempDir;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "stegvault");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    pipeline::write_file(tmp_ / "cover.bmp", covers::synthesize_bmp24(100, 100, 1));
    SplitMix64 rng(8);
    tree_ = stegvault::testing::random_tree(rng, 6, 300);
    std::sort(tree_.begin(), tree_.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
    stegvault::testing::write_tree(tmp_ / "docs", tree_);
    ASSERT_EQ(cli({"keygen", "--bits", "512", "--pub", path("k.pub"), "--priv", path("k.priv"), "--rng-seed", "3"})
                  .code,
              kExitOk);
  }

  std::string path(const std::string& name) const { return (tmp_ / name).string(); }

  Outcome embed(const std::string& out, const std::string& key, const std::string& keyfile,
                const std::string& seed = "5") {
    return cli({"embed", "--cover", path("cover.bmp"), "--input", path("docs"), "--output", path(out),
                "--key-file", path(keyfile), "--pub-key", path("k.pub"), "--key-number", key, "--rng-seed", seed});
  }

  Outcome extract(const std::string& stego, const std::string& key, const std::string& keyfile,
                  const std::string& dest) {
    return cli({"extract", "--stego", path(stego), "--output", path(dest), "--key-file", path(keyfile),
                "--priv-key", path("k.priv"), "--key-number", key});
  }

  TempDir tmp_;
  std::vector<archive::ArchiveEntry> tree_;
};

TEST_F(CliTest, EmbedExtractRoundTrip) {
  const auto e = embed("s.bmp", "42", "s.key");
  ASSERT_EQ(e.code, kExitOk) << e.err;
  EXPECT_NE(e.out.find("hiding done"), std::string::npos);
  EXPECT_NE(e.out.find("/3726 bytes (k=1)"), std::string::npos);
  EXPECT_NE(e.out.find("PSNR: "), std::string::npos);

  const auto x = extract("s.bmp", "42", "s.key", "out");
  ASSERT_EQ(x.code, kExitOk) << x.err;
  EXPECT_NE(x.out.find("total length of data received: "), std::string::npos);
  EXPECT_NE(x.out.find("unhide done"), std::string::npos);
  auto back = stegvault::testing::read_tree(tmp_ / "out" / "docs");
  std::sort(back.begin(), back.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  EXPECT_EQ(back, tree_);
  EXPECT_TRUE(fs::exists(tmp_ / "docs"));  // inputs are left alone by default
}

TEST_F(CliTest, OneKibUsageLine) {
  SplitMix64 rng(1);
  pipeline::write_file(tmp_ / "file.bin", stegvault::testing::random_bytes(rng, 1024));
  const auto e = cli({"embed", "--cover", path("cover.bmp"), "--input", path("file.bin"), "--output", path("o.bmp"),
                      "--key-file", path("o.key"), "--pub-key", path("k.pub"), "--key-number", "1"});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  EXPECT_NE(e.out.find("capacity used: 1056/3726 bytes (k=1)"), std::string::npos) << e.out;
}

TEST_F(CliTest, ErrorExitCodes) {
  ASSERT_EQ(embed("s.bmp", "42", "s.key").code, kExitOk);
  EXPECT_EQ(extract("s.bmp", "43", "s.key", "o1").code, kExitIntegrity);
  EXPECT_FALSE(fs::exists(tmp_ / "o1"));
  ASSERT_EQ(embed("t.bmp", "42", "t.key", "6").code, kExitOk);
  const auto mismatch = extract("s.bmp", "42", "t.key", "o2");
  EXPECT_EQ(mismatch.code, kExitIntegrity);
  EXPECT_NE(mismatch.err.find("integrity failure"), std::string::npos);
  EXPECT_EQ(extract("s.bmp", "42", "missing.key", "o3").code, kExitIntegrity);
  EXPECT_EQ(cli({"extract", "--stego", path("s.bmp"), "--output", path("o4"), "--key-number", "42"}).code,
            kExitIntegrity);
  EXPECT_EQ(extract("cover.bmp", "42", "s.key", "o5").code, kExitNotStego);

  const Bytes stego = pipeline::read_file(tmp_ / "s.bmp");
  pipeline::write_file(tmp_ / "trunc.bmp", ByteView(stego).first(stego.size() / 2));
  EXPECT_EQ(extract("trunc.bmp", "42", "s.key", "o6").code, kExitMalformed);

  SplitMix64 rng(2);
  pipeline::write_file(tmp_ / "big.bin", stegvault::testing::random_bytes(rng, 5 * 1024));
  const auto big = cli({"embed", "--cover", path("cover.bmp"), "--input", path("big.bin"), "--output",
                        path("b.bmp"), "--key-file", path("b.key"), "--pub-key", path("k.pub"), "--key-number", "1"});
  EXPECT_EQ(big.code, kExitCapacity);
  EXPECT_NE(big.err.find("have 3726 bytes"), std::string::npos);
  EXPECT_FALSE(fs::exists(tmp_ / "b.bmp"));

  pipeline::write_file(tmp_ / "img.png", stegvault::testing::read_fixture("reject_image.png"));
  EXPECT_EQ(cli({"embed", "--cover", path("img.png"), "--input", path("docs"), "--output", path("p.bmp"),
                 "--cipher", "none", "--key-number", "1"})
                .code,
            kExitUnsupportedCover);

  EXPECT_EQ(cli({"keygen", "--bits", "100", "--pub", path("x"), "--priv", path("y")}).code, kExitUsage);
  EXPECT_EQ(cli({"bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"embed", "--cover", path("cover.bmp")}).code, kExitUsage);
  EXPECT_EQ(cli({"capacity", "--cover", path("cover.bmp"), "-k", "3"}).code, kExitUsage);
  EXPECT_EQ(cli({"keygen", "--bits", "512", "--pub", path("nodir/x.pub"), "--priv", path("nodir/x.priv")}).code,
            kExitIo);
}

TEST_F(CliTest, UnsafeArchivePathExitCode) {
  Bytes arc;
  append(arc, as_bytes("SVA1"));
  put_le32(arc, 1);
  put_le16(arc, 8);
  append(arc, as_bytes("/etc/pw"));
  arc.push_back('!');
  put_le64(arc, 0);
  put_le32(arc, 0);
  const auto cover = covers::parse_cover(pipeline::read_file(tmp_ / "cover.bmp"));
  const auto stego_obj =
      stego::embed(cover, arc, 1, stego::PermutationSpec::for_cover(cover, 9, crypto::Salt{}), false);
  pipeline::write_file(tmp_ / "evil.bmp", stego_obj.raw());
  EXPECT_EQ(cli({"extract", "--stego", path("evil.bmp"), "--output", path("e"), "--key-number", "9"}).code,
            kExitUnsafePath);
  EXPECT_FALSE(fs::exists(tmp_ / "e"));
}

TEST_F(CliTest, KeygenDeterministic) {
  ASSERT_EQ(cli({"keygen", "--bits", "512", "--pub", path("a.pub"), "--priv", path("a.priv"), "--rng-seed", "3"})
                .code,
            kExitOk);
  EXPECT_EQ(pipeline::read_file(tmp_ / "a.pub"), pipeline::read_file(tmp_ / "k.pub"));
  EXPECT_EQ(pipeline::read_file(tmp_ / "a.priv"), pipeline::read_file(tmp_ / "k.priv"));
  const auto pub = pipeline::read_file(tmp_ / "a.pub");
  EXPECT_EQ(std::string(pub.begin(), pub.begin() + 4), "SVP1");
}

TEST_F(CliTest, EmbedDeterministic) {
  ASSERT_EQ(embed("a.bmp", "7", "a.key").code, kExitOk);
  ASSERT_EQ(embed("b.bmp", "7", "b.key").code, kExitOk);
  EXPECT_EQ(pipeline::read_file(tmp_ / "a.bmp"), pipeline::read_file(tmp_ / "b.bmp"));
  EXPECT_EQ(pipeline::read_file(tmp_ / "a.key"), pipeline::read_file(tmp_ / "b.key"));
}

TEST_F(CliTest, CapacityInspectDiff) {
  const auto c = cli({"capacity", "--cover", path("cover.bmp")});
  EXPECT_EQ(c.code, kExitOk);
  EXPECT_NE(c.out.find("payload capacity (k=1): 3726 bytes"), std::string::npos);
  EXPECT_NE(cli({"capacity", "--cover", path("cover.bmp"), "-k", "2"}).out.find("7452 bytes"), std::string::npos);

  const auto pristine = cli({"inspect", "--stego", path("cover.bmp")});
  EXPECT_EQ(pristine.code, kExitNotStego);
  EXPECT_NE(pristine.out.find("no stego header found"), std::string::npos);

  ASSERT_EQ(embed("s.bmp", "1", "s.key").code, kExitOk);
  const auto ins = cli({"inspect", "--stego", path("s.bmp")});
  EXPECT_EQ(ins.code, kExitOk);
  EXPECT_NE(ins.out.find("(encrypted)"), std::string::npos);

  const auto d = cli({"diff", "--cover", path("cover.bmp"), "--stego", path("s.bmp"), "--format", "kv"});
  EXPECT_EQ(d.code, kExitOk);
  EXPECT_NE(d.out.find("audit=ok"), std::string::npos);
  const auto pos = d.out.find("psnr_db=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_GE(std::stod(d.out.substr(pos + 8)), 50.0);

  Bytes tampered = pipeline::read_file(tmp_ / "s.bmp");
  tampered[0x26] ^= 0x40;  // horizontal resolution field, outside the pixel array
  pipeline::write_file(tmp_ / "tampered.bmp", tampered);
  EXPECT_EQ(cli({"diff", "--cover", path("cover.bmp"), "--stego", path("tampered.bmp")}).code, kExitAudit);
}

TEST_F(CliTest, PlainCipherNeedsNoKeys) {
  ASSERT_EQ(cli({"embed", "--cover", path("cover.bmp"), "--input", path("docs"), "--output", path("p.bmp"),
                 "--cipher", "none", "--key-number", "11", "-k", "2"})
                .code,
            kExitOk);
  EXPECT_NE(cli({"inspect", "--stego", path("p.bmp")}).out.find("(plain)"), std::string::npos);
  EXPECT_EQ(cli({"extract", "--stego", path("p.bmp"), "--output", path("po"), "--key-number", "11"}).code, kExitOk);
  EXPECT_EQ(cli({"extract", "--stego", path("p.bmp"), "--output", path("pq"), "--key-number", "12"}).code,
            kExitIntegrity);
  EXPECT_EQ(cli({"embed", "--cover", path("cover.bmp"), "--input", path("docs"), "--output", path("q.bmp"),
                 "--cipher", "rot13", "--key-number", "1"})
                .code,
            kExitUsage);
}

TEST_F(CliTest, ShredRemovesInputsAfterEmbed) {
  const auto e = cli({"embed", "--cover", path("cover.bmp"), "--input", path("docs"), "--output", path("s.bmp"),
                      "--key-file", path("s.key"), "--pub-key", path("k.pub"), "--key-number", "4", "--shred"});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  EXPECT_FALSE(fs::exists(tmp_ / "docs"));
  ASSERT_EQ(extract("s.bmp", "4", "s.key", "out").code, kExitOk);
  auto back = stegvault::testing::read_tree(tmp_ / "out" / "docs");
  std::sort(back.begin(), back.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  EXPECT_EQ(back, tree_);
}

TEST(BenchCliTest, CsvRowsPerRepetition) {
  TempDir tmp;
  const auto r = cli({"bench", "--sizes", "1K,4K", "--modes", "des-only,hybrid", "--repetitions", "3", "--csv",
                      (tmp / "b.csv").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Bytes raw = pipeline::read_file(tmp / "b.csv");
  std::istringstream in(std::string(raw.begin(), raw.end()));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kBenchCsvHeader);
  std::map<std::string, int> rows;
  while (std::getline(in, line)) {
    const auto last = line.rfind(',');
    rows[line.substr(0, last)]++;
  }
  EXPECT_EQ(rows.size(), 2u * 2 * 5);
  for (const auto& [key, count] : rows) EXPECT_EQ(count, 3) << key;
  EXPECT_EQ(rows.count("1024,des-only,total"), 1u);
  EXPECT_EQ(cli({"bench", "--modes", "quantum"}).code, kExitUsage);
  EXPECT_EQ(cli({"bench", "--sizes", "0"}).code, kExitUsage);
}

TEST(BenchCliTest, SizeSuffixes) {
  BenchConfig cfg;
  cfg.sizes = {100};
  cfg.modes = {BenchMode::kRsaDirect};
  const auto samples = run_bench(cfg);
  ASSERT_EQ(samples.size(), 1u);
  EXPECT_GT(samples[0].crypto(), 0.0);
  EXPECT_EQ(parse_bench_mode("rsa-direct"), BenchMode::kRsaDirect);
}

TEST(ProcessTest, BinaryRunsAndReportsExitCodes) {
  TempDir tmp;
  pipeline::write_file(tmp / "c.bmp", covers::synthesize_bmp24(30, 30, 2));
  const std::string cmd = std::string("\"") + STEGVAULT_CLI_PATH + "\" inspect --stego \"" + (tmp / "c.bmp").string() +
                          "\" > \"" + (tmp / "out.txt").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitNotStego);
  const Bytes out = pipeline::read_file(tmp / "out.txt");
  EXPECT_NE(std::string(out.begin(), out.end()).find("no stego header found"), std::string::npos);

  const std::string version = std::string("\"") + STEGVAULT_CLI_PATH + "\" --version > /dev/null";
  EXPECT_EQ(WEXITSTATUS(std::system(version.c_str())), 0);
}

}  // namespace
}  // namespace stegvault::cli
