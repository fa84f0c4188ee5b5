#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "polar16/channel.hpp"
#include "polar16/codec.hpp"
#include "polar16/fast16.hpp"
#include "polar16/rng.hpp"
#include "polar16/winproc.hpp"

namespace {

using namespace polar16;

std::vector<double> bench_llrs(int n, uint64_t seed = 42) {
  RandomStream rng(seed);
  std::vector<double> y(static_cast<size_t>(n));
  for (auto& v : y) v = 12.0 * (rng.next_unit() - 0.5);
  return y;
}

template <typename Proc>
void run_block(Proc& proc, std::span<const double> y) {
  proc.reset(y);
  for (int phase = 0; phase < 16; ++phase) {
    const double s = proc.next_llr();
    proc.decide(s < 0.0 ? 1 : 0);
  }
}

void BM_Fht8(benchmark::State& state) {
  std::array<double, 8> s{1.0, -2.0, 0.5, 3.0, -1.0, 0.25, -4.0, 2.0};
  for (auto _ : state) {
    auto out = fht8(s);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_Fht8);

void BM_Fast16Block(benchmark::State& state) {
  const auto y = bench_llrs(16);
  if (state.range(0) == 1) {
    Fast16K1 proc;
    for (auto _ : state) run_block(proc, y);
  } else {
    Fast16K2 proc;
    for (auto _ : state) run_block(proc, y);
  }
}
BENCHMARK(BM_Fast16Block)->Arg(1)->Arg(2);

void BM_GenericBlock(benchmark::State& state) {
  const Kernel k = state.range(0) == 1 ? k1() : k2();
  const auto plan = std::make_shared<const WindowPlan>(window_plan(k));
  GenericKernelProcessor proc(plan);
  const auto y = bench_llrs(16);
  for (auto _ : state) run_block(proc, y);
}
BENCHMARK(BM_GenericBlock)->Arg(1)->Arg(2);

void BM_SclDecode256(benchmark::State& state) {
  const int list_size = static_cast<int>(state.range(0));
  std::vector<int> frozen(128);
  std::iota(frozen.begin(), frozen.end(), 0);
  const CodeSpec spec = CodeSpec::create(k2(), 2, 128, std::move(frozen));
  const auto payload = std::vector<uint8_t>(128, 1);
  RandomStream ch(7);
  const auto llr = awgn_llr(encode(spec, payload), 1.5, 0.5, ch);
  for (auto _ : state) {
    auto res = scl_decode(spec, llr, list_size);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_SclDecode256)->Arg(1)->Arg(8);

void BM_Encode4096(benchmark::State& state) {
  std::vector<uint8_t> u(4096);
  for (size_t i = 0; i < u.size(); ++i) u[i] = static_cast<uint8_t>(i & 1);
  const Kernel k = k2();
  for (auto _ : state) {
    auto c = transform_encode(k, 3, u);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_Encode4096);

}  // namespace

BENCHMARK_MAIN();
