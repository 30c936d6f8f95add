#include <benchmark/benchmark.h>

#include "stegvault/rsa.hpp"
#include "stegvault/session.hpp"

namespace {

using namespace stegvault;

void BM_RsaKeygen(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto kp = crypto::rsa_keygen(static_cast<int>(state.range(0)), ++seed);
    benchmark::DoNotOptimize(kp.n.get_mpz_t());
  }
}
BENCHMARK(BM_RsaKeygen)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_RsaPrivateOp(benchmark::State& state) {
  const auto kp = crypto::rsa_keygen(static_cast<int>(state.range(0)), 1);
  const crypto::BigUint m = kp.n / 3;
  for (auto _ : state) {
    auto c = crypto::rsa_raw(m, kp.d, kp.n);
    benchmark::DoNotOptimize(c.get_mpz_t());
  }
}
BENCHMARK(BM_RsaPrivateOp)->Arg(512)->Arg(1024)->Arg(2048)->Unit(benchmark::kMicrosecond);

void BM_SessionWrapUnwrap(benchmark::State& state) {
  const auto kp = crypto::rsa_keygen(512, 2);
  const auto secret = crypto::SessionSecret::generate(3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto kf = crypto::wrap_session(secret, kp.public_key(), ++seed);
    auto back = crypto::unwrap_session(kf, kp.private_key());
    benchmark::DoNotOptimize(back.iv.data());
  }
}
BENCHMARK(BM_SessionWrapUnwrap)->Unit(benchmark::kMicrosecond);

}  // namespace
