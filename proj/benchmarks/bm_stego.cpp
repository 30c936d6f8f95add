#include <benchmark/benchmark.h>

#include "stegvault/covers.hpp"
#include "stegvault/metrics.hpp"
#include "stegvault/prng.hpp"
#include "stegvault/stego.hpp"

namespace {

using namespace stegvault;

struct Setup {
  covers::CoverObject cover;
  Bytes payload;
  stego::PermutationSpec spec;
};

Setup make_setup(std::uint32_t side, int k) {
  auto cover = covers::parse_cover(covers::synthesize_bmp24(side, side, 1));
  SplitMix64 rng(2);
  Bytes payload(covers::payload_capacity(cover.carrier_count(), k));
  for (auto& b : payload) b = static_cast<std::uint8_t>(rng.next());
  auto spec = stego::PermutationSpec::for_cover(cover, 42, crypto::Salt{1, 2, 3, 4, 5, 6, 7, 8});
  return {std::move(cover), std::move(payload), spec};
}

void BM_Permutation(benchmark::State& state) {
  const stego::PermutationSpec spec{7, {}, static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) {
    auto p = stego::derive_permutation(spec);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(BM_Permutation)->Arg(30000)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_EmbedFullCapacity(benchmark::State& state) {
  const int k = static_cast<int>(state.range(1));
  const auto s = make_setup(static_cast<std::uint32_t>(state.range(0)), k);
  for (auto _ : state) {
    auto out = stego::embed(s.cover, s.payload, k, s.spec);
    benchmark::DoNotOptimize(out.raw().data());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(s.payload.size()));
}
BENCHMARK(BM_EmbedFullCapacity)->Args({256, 1})->Args({1024, 2})->Unit(benchmark::kMillisecond);

void BM_ExtractFullCapacity(benchmark::State& state) {
  const int k = static_cast<int>(state.range(1));
  const auto s = make_setup(static_cast<std::uint32_t>(state.range(0)), k);
  const auto stego_obj = stego::embed(s.cover, s.payload, k, s.spec);
  for (auto _ : state) {
    auto out = stego::extract(stego_obj, s.spec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(s.payload.size()));
}
BENCHMARK(BM_ExtractFullCapacity)->Args({256, 1})->Args({1024, 2})->Unit(benchmark::kMillisecond);

void BM_Distortion(benchmark::State& state) {
  const auto s = make_setup(512, 1);
  const auto stego_obj = stego::embed(s.cover, s.payload, 1, s.spec);
  for (auto _ : state) {
    auto r = metrics::distortion(s.cover, stego_obj);
    benchmark::DoNotOptimize(r.mse);
  }
}
BENCHMARK(BM_Distortion)->Unit(benchmark::kMillisecond);

}  // namespace
