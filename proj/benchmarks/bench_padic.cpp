#include <benchmark/benchmark.h>

#include <random>

#include "qspec/padic.hpp"

using namespace qspec;

namespace {

std::vector<PadicScalar> random_scalars(std::uint32_t p, int prec, std::size_t n) {
  std::mt19937_64 rng(42);
  const PadicCtx& ctx = padic_ctx(p, prec);
  std::vector<PadicScalar> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    U256 r(rng());
    if (!ctx.modulus.fits_u64()) {
      r.w[1] = rng();
      r.w[2] = rng() & 0x3fffffffffffffffull;
    }
    out.push_back(PadicScalar::from_residue(p, prec, mod_u512(U512{{r.w[0], r.w[1], r.w[2], r.w[3], 0, 0, 0, 0}}, ctx.modulus)));
  }
  return out;
}

void BM_mul(benchmark::State& state) {
  const int prec = (int)state.range(0);
  auto xs = random_scalars(5, prec, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = xs[i % xs.size()];
    const auto& b = xs[(i * 7 + 3) % xs.size()];
    benchmark::DoNotOptimize(a * b);
    ++i;
  }
}
BENCHMARK(BM_mul)->Arg(20)->Arg(60)->Arg(100);

void BM_inverse(benchmark::State& state) {
  const int prec = (int)state.range(0);
  auto xs = random_scalars(5, prec, 64);
  std::size_t i = 0;
  for (auto _ : state) {
    auto a = xs[i % xs.size()];
    if (a.valuation().v != 0) a = a + PadicScalar::one(5, prec);
    benchmark::DoNotOptimize(a.inverse());
    ++i;
  }
}
BENCHMARK(BM_inverse)->Arg(20)->Arg(60);

void BM_teichmuller(benchmark::State& state) {
  const int prec = (int)state.range(0);
  std::size_t i = 0;
  for (auto _ : state) {
    auto a = PadicScalar::from_int(5, prec, 1 + (long long)(i % 4));
    benchmark::DoNotOptimize(teichmuller(a));
    ++i;
  }
}
BENCHMARK(BM_teichmuller)->Arg(20)->Arg(60);

void BM_one_unit_power(benchmark::State& state) {
  const int prec = (int)state.range(0);
  auto u = PadicScalar::from_int(5, prec, 6);
  auto s = PadicScalar::from_int(5, prec, 123456789);
  for (auto _ : state) {
    benchmark::DoNotOptimize(one_unit_power(u, s));
  }
}
BENCHMARK(BM_one_unit_power)->Arg(20)->Arg(60);

}  // namespace

BENCHMARK_MAIN();
