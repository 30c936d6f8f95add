#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stegvault::cli {

enum class BenchMode { kHybrid, kRsaDirect, kDesOnly };

std::optional<BenchMode> parse_bench_mode(std::string_view name) noexcept;
std::string_view to_string(BenchMode mode) noexcept;

struct BenchConfig {
  std::vector<std::uint64_t> sizes;
  std::vector<BenchMode> modes;
  int repetitions = 1;
  int rsa_bits = 512;
  int k = 2;
  std::uint64_t seed = 1;
};

// Wall-clock seconds per pipeline phase for one run.
struct BenchSample {
  std::uint64_t size_bytes = 0;
  BenchMode mode = BenchMode::kHybrid;
  int repetition = 0;
  double encrypt = 0;
  double embed = 0;
  double extract = 0;
  double decrypt = 0;

  double crypto() const noexcept { return encrypt + decrypt; }
  double total() const noexcept { return encrypt + embed + extract + decrypt; }
};

// Runs every (size, mode) pair `repetitions` times back to back on the
// calling thread. Each run round-trips a random payload through
// encrypt -> embed -> extract -> decrypt and throws if the output differs.
std::vector<BenchSample> run_bench(const BenchConfig& config);

inline constexpr std::string_view kBenchCsvHeader = "size_bytes,mode,phase,seconds";

// One row per (sample, phase) with phases encrypt, embed, extract, decrypt,
// total; so each (size, mode, phase) has `repetitions` rows.
std::string bench_csv(const std::vector<BenchSample>& samples);

// Mean seconds per (size, mode).
std::string bench_table(const std::vector<BenchSample>& samples);

}  // namespace stegvault::cli
