#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "polar16/channel.hpp"
#include "polar16/construct.hpp"
#include "polar16/simulate.hpp"

using namespace polar16;

TEST_CASE("awgn sigma and llr scale") {
  // Eb/N0 = 0 dB at rate 1 gives sigma^2 = 0.5 and LLR = 4y.
  const double sigma = awgn_sigma(0.0, 1.0);
  CHECK(sigma * sigma == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(2.0 / (sigma * sigma) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS(awgn_sigma(1.0, 0.0));
}

TEST_CASE("awgn llr sign tracks the transmitted bit at high snr") {
  RandomStream rng(99);
  std::vector<uint8_t> cw(64);
  for (size_t i = 0; i < cw.size(); ++i) cw[i] = static_cast<uint8_t>(i & 1);
  const auto llr = awgn_llr(cw, 25.0, 0.5, rng);
  for (size_t i = 0; i < cw.size(); ++i) CHECK((llr[i] < 0) == (cw[i] == 1));
}

TEST_CASE("awgn llr empirical mean matches 2/sigma^2") {
  const double snr_db = 2.0, rate = 0.5;
  const double sigma = awgn_sigma(snr_db, rate);
  const double mean_want = 2.0 / (sigma * sigma);
  const double llr_sd = 2.0 / sigma;  // sd of 2y/sigma^2 with y ~ N(1, sigma^2)
  const int samples = 1000000;
  RandomStream rng(12345);
  const std::vector<uint8_t> zeros(256, 0);
  double sum = 0.0;
  for (int i = 0; i < samples / 256; ++i) {
    const auto llr = awgn_llr(zeros, snr_db, rate, rng);
    sum = std::accumulate(llr.begin(), llr.end(), sum);
  }
  const int n = (samples / 256) * 256;
  const double mean = sum / n;
  const double se = llr_sd / std::sqrt(static_cast<double>(n));
  CHECK(std::fabs(mean - mean_want) <= 3.0 * se);
}

TEST_CASE("random streams are deterministic and splittable") {
  RandomStream a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(stream_seed(1, 2) != stream_seed(1, 3));
  CHECK(stream_seed(1, 2) != stream_seed(2, 2));
  RandomStream g(11);
  for (int i = 0; i < 1000; ++i) {
    const double u = g.next_unit();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("zero-noise construction freezes the highest indices") {
  // Degenerate by design: all error counts are zero, ties break upward.
  const auto res = monte_carlo_construct(k1(), 1, 8, 40.0, 0.5, 10, 123);
  for (uint64_t c : res.error_counts) CHECK(c == 0);
  CHECK(res.frozen == std::vector<int>{8, 9, 10, 11, 12, 13, 14, 15});
}

TEST_CASE("construction error counts reflect polarization order") {
  const Kernel f16 = arikan_power_kernel(4);
  const auto res = monte_carlo_construct(f16, 1, 8, 1.0, 0.5, 100000, 777);
  const double c0 = static_cast<double>(res.error_counts[0]);
  const double c15 = static_cast<double>(res.error_counts[15]);
  // 5-sigma separation between the worst and best subchannel.
  CHECK(c0 - c15 >= 5.0 * std::sqrt(c0 + c15 + 1.0));
  CHECK(res.error_counts[0] > res.error_counts[15]);
}

TEST_CASE("construction is thread-count invariant") {
  const auto a = monte_carlo_construct(k2(), 1, 8, 1.5, 0.5, 500, 42, ProcessorKind::kAuto, 1);
  const auto b = monte_carlo_construct(k2(), 1, 8, 1.5, 0.5, 500, 42, ProcessorKind::kAuto, 2);
  CHECK(a.error_counts == b.error_counts);
  CHECK(a.frozen == b.frozen);
}

TEST_CASE("frozen set text round trip") {
  const std::vector<int> f = {0, 3, 7, 200};
  CHECK(frozen_from_text(frozen_to_text(f)) == f);
}

TEST_CASE("wilson interval") {
  const auto [lo0, hi0] = wilson_interval(0, 1000);
  CHECK(lo0 <= 1e-12);
  CHECK(hi0 > 0.0);
  CHECK(hi0 < 0.01);
  const auto [lo, hi] = wilson_interval(100, 1000);
  CHECK(lo < 0.1);
  CHECK(hi > 0.1);
  CHECK(lo > 0.07);
  CHECK(hi < 0.13);
}

TEST_CASE("zero-noise simulation has zero FER") {
  SimConfig cfg;
  cfg.spec = CodeSpec::create(k2(), 1, 8, {0, 1, 2, 3, 4, 5, 6, 7});
  cfg.snr_db = {40.0};
  cfg.list_sizes = {1, 2};
  cfg.max_frames = 200;
  cfg.max_errors = 100;
  cfg.seed = 5;
  const auto points = simulate_fer(cfg);
  REQUIRE(points.size() == 2);
  for (const auto& p : points) {
    CHECK(p.errors == 0);
    CHECK(p.fer == 0.0);
    CHECK(p.frames == 200);
    CHECK(p.ops_mean > 0.0);
  }
}

TEST_CASE("simulation output is deterministic across runs and thread counts") {
  SimConfig cfg;
  cfg.spec = CodeSpec::create(k2(), 1, 8, {0, 1, 2, 3, 4, 5, 6, 7});
  cfg.snr_db = {0.5, 1.5};
  cfg.list_sizes = {1, 2};
  cfg.max_frames = 300;
  cfg.max_errors = 50;
  cfg.seed = 11;
  cfg.threads = 1;
  const auto a = sim_to_csv(cfg, simulate_fer(cfg));
  const auto b = sim_to_csv(cfg, simulate_fer(cfg));
  CHECK(a == b);
  cfg.threads = 2;
  const auto c = sim_to_csv(cfg, simulate_fer(cfg));
  CHECK(a == c);
  CHECK(a.find("snr_db,list,frames,errors,fer,ci_lo,ci_hi,ops_mean") != std::string::npos);
}

TEST_CASE("kernel-processing share of an SC pass at n = 4096 is exact") {
  // m levels of n/l blocks at 181 counted ops each; nothing else is counted.
  const CodeSpec spec = CodeSpec::create(k2(), 3, 2048, [] {
    std::vector<int> f(2048);
    std::iota(f.begin(), f.end(), 0);
    return f;
  }());
  std::vector<uint8_t> payload(2048, 0);
  for (size_t i = 0; i < payload.size(); i += 3) payload[i] = 1;
  const auto llr = perfect_llr(encode(spec, payload));
  const auto res = sc_decode(spec, llr);
  CHECK(res.payload == payload);
  CHECK(res.kernel_ops == 3ull * (4096 / 16) * 181);
}

TEST_CASE("reported intervals contain the empirical rate") {
  SimConfig cfg;
  cfg.spec = CodeSpec::create(k1(), 1, 8, {0, 1, 2, 3, 4, 5, 6, 7});
  cfg.snr_db = {1.0};
  cfg.list_sizes = {1};
  cfg.max_frames = 500;
  cfg.max_errors = 100;
  cfg.seed = 21;
  for (const auto& p : simulate_fer(cfg)) {
    CHECK(p.ci_lo <= p.fer);
    CHECK(p.fer <= p.ci_hi);
    CHECK(p.frames >= p.errors);
  }
}

TEST_CASE("constructed frozen set beats a random one") {
  const Kernel k = k2();
  const double snr = 2.0;
  const auto built = monte_carlo_construct(k, 2, 128, snr, 0.5, 4000, 2024);

  // Random frozen set of the same size, fixed seed.
  std::mt19937_64 rng(555);
  std::vector<int> all(256);
  std::iota(all.begin(), all.end(), 0);
  for (size_t i = all.size() - 1; i > 0; --i) std::swap(all[i], all[rng() % (i + 1)]);
  std::vector<int> random_frozen(all.begin(), all.begin() + 128);

  SimConfig cfg;
  cfg.snr_db = {snr};
  cfg.list_sizes = {1};
  cfg.max_frames = 2000;
  cfg.max_errors = 2000;
  cfg.seed = 77;

  cfg.spec = CodeSpec::create(k, 2, 128, built.frozen);
  const auto good = simulate_fer(cfg).front();
  cfg.spec = CodeSpec::create(k, 2, 128, random_frozen);
  const auto bad = simulate_fer(cfg).front();

  const double floor_fer = 0.5 / static_cast<double>(good.frames);
  CHECK(bad.fer >= 10.0 * std::max(good.fer, floor_fer));
}
