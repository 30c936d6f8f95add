#include <benchmark/benchmark.h>

#include "stegvault/des.hpp"
#include "stegvault/prng.hpp"

namespace {

using namespace stegvault;

Bytes noise(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.next());
  return out;
}

void BM_DesBlock(benchmark::State& state) {
  const crypto::DesCipher cipher(crypto::DesKey(crypto::DesBlock{1, 2, 3, 4, 5, 6, 7, 8}));
  std::uint64_t block = 0x0123456789ABCDEFULL;
  for (auto _ : state) {
    block = cipher.encrypt(block);
    benchmark::DoNotOptimize(block);
  }
  state.SetBytesProcessed(state.iterations() * 8);
}
BENCHMARK(BM_DesBlock);

void BM_DesCbc(benchmark::State& state) {
  const Bytes data = noise(static_cast<std::size_t>(state.range(0)), 1);
  const crypto::DesKey key(crypto::DesBlock{8, 7, 6, 5, 4, 3, 2, 1});
  const crypto::DesBlock iv{};
  for (auto _ : state) {
    auto ct = crypto::des_cbc(data, key, iv, crypto::Direction::kEncrypt);
    benchmark::DoNotOptimize(ct.data());
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DesCbc)->Arg(1024)->Arg(100 * 1024)->Arg(843 * 1024)->Unit(benchmark::kMillisecond);

}  // namespace
