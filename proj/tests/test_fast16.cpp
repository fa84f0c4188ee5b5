#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "polar16/fast16.hpp"
#include "polar16/winproc.hpp"

using namespace polar16;

namespace {

std::vector<double> random_llrs(std::mt19937_64& rng, double lim = 8.0) {
  std::uniform_real_distribution<double> dist(-lim, lim);
  std::vector<double> y(16);
  for (auto& v : y) v = dist(rng);
  return y;
}

std::unique_ptr<Fast16Base> make_fast(const Kernel& k) {
  if (k.name == "k1") return std::make_unique<Fast16K1>();
  return std::make_unique<Fast16K2>();
}

// Runs one full block with random decisions, checking every phase LLR against
// the generic processor (same decisions on both).
void check_block(const Kernel& k, const WindowPlan& plan, std::span<const double> y,
                 std::mt19937_64& rng, bool frozen_zero = false) {
  auto fast = make_fast(k);
  auto plan_ptr = std::make_shared<const WindowPlan>(plan);
  GenericKernelProcessor gen(plan_ptr);
  fast->reset(y);
  gen.reset(y);
  for (int phase = 0; phase < 16; ++phase) {
    const double a = fast->next_llr();
    const double b = gen.next_llr();
    CHECK(std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b)));
    const int bit = frozen_zero ? 0 : static_cast<int>(rng() & 1);
    fast->decide(bit);
    gen.decide(bit);
  }
}

}  // namespace

TEST_CASE("fht8 examples and naive oracle") {
  std::array<double, 8> e0{};
  e0[0] = 1.0;
  const auto all_one = fht8(e0);
  for (double v : all_one) CHECK(v == 1.0);

  std::array<double, 8> ones;
  ones.fill(1.0);
  const auto spike = fht8(ones);
  CHECK(spike[0] == 8.0);
  for (int k = 1; k < 8; ++k) CHECK(spike[static_cast<size_t>(k)] == 0.0);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<double, 8> s;
    for (auto& v : s) v = dist(rng);
    const auto got = fht8(s);
    for (int k = 0; k < 8; ++k) {
      double want = 0.0;
      for (int i = 0; i < 8; ++i) {
        const int par = std::popcount(static_cast<unsigned>(i & k)) & 1;
        want += par ? -s[static_cast<size_t>(i)] : s[static_cast<size_t>(i)];
      }
      CHECK(got[static_cast<size_t>(k)] == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("fast16 matches the generic processor on random blocks") {
  std::mt19937_64 rng(43);
  for (const Kernel& k : {k1(), k2()}) {
    const WindowPlan plan = window_plan(k);
    for (int trial = 0; trial < 300; ++trial) {
      const auto y = random_llrs(rng);
      check_block(k, plan, y, rng);
    }
  }
}

TEST_CASE("fast16 matches the generic processor on adversarial inputs") {
  std::mt19937_64 rng(47);
  for (const Kernel& k : {k1(), k2()}) {
    const WindowPlan plan = window_plan(k);
    SUBCASE("all zero channel") {
      const std::vector<double> y(16, 0.0);
      check_block(k, plan, y, rng);
    }
    SUBCASE("clipped perfect channel") {
      std::vector<double> y(16);
      for (int i = 0; i < 16; ++i) y[static_cast<size_t>(i)] = (i % 3 == 0) ? kLlrClip : -kLlrClip;
      check_block(k, plan, y, rng);
    }
    SUBCASE("tied magnitudes") {
      std::vector<double> y(16);
      for (int i = 0; i < 16; ++i) y[static_cast<size_t>(i)] = (i & 1) ? -2.0 : 2.0;
      check_block(k, plan, y, rng);
      for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> yt(16);
        for (auto& v : yt) v = (rng() & 1 ? 1.0 : -1.0) * static_cast<double>(1 + (rng() % 3));
        check_block(k, plan, yt, rng);
      }
    }
    SUBCASE("frozen-zero decisions") {
      for (int trial = 0; trial < 50; ++trial) {
        const auto y = random_llrs(rng);
        check_block(k, plan, y, rng, /*frozen_zero=*/true);
      }
    }
  }
}

TEST_CASE("fast16 per-phase operation counts equal the tabulated budgets") {
  std::mt19937_64 rng(53);
  struct Case {
    Kernel k;
    const std::array<int, 16>& costs;
    int total;
  };
  const Case cases[] = {{k1(), phase_costs_k1(), 447}, {k2(), phase_costs_k2(), 181}};
  for (const auto& c : cases) {
    for (int trial = 0; trial < 100; ++trial) {
      auto fast = make_fast(c.k);
      const auto y = random_llrs(rng);
      fast->reset(y);
      for (int phase = 0; phase < 16; ++phase) {
        fast->next_llr();
        fast->decide(static_cast<int>(rng() & 1));
      }
      const auto report = fast->op_report();
      uint64_t total = 0;
      for (int phase = 0; phase < 16; ++phase) {
        CHECK(report[static_cast<size_t>(phase)].total() ==
              static_cast<uint64_t>(c.costs[static_cast<size_t>(phase)]));
        total += report[static_cast<size_t>(phase)].total();
      }
      CHECK(total == static_cast<uint64_t>(c.total));
    }
  }
}

TEST_CASE("op_report requires a complete pass") {
  Fast16K2 fast;
  std::vector<double> y(16, 1.0);
  fast.reset(y);
  fast.next_llr();
  CHECK_THROWS_AS(fast.op_report(), std::logic_error);
}

TEST_CASE("single-candidate phases do at most one operation") {
  // Phases with empty windows after the widest point read stored maxima.
  std::mt19937_64 rng(59);
  const auto y = random_llrs(rng);
  Fast16K1 f1;
  f1.reset(y);
  for (int phase = 0; phase < 16; ++phase) {
    f1.next_llr();
    f1.decide(static_cast<int>(rng() & 1));
  }
  const auto rep1 = f1.op_report();
  CHECK(rep1[7].total() == 1);
  for (int phase = 9; phase < 13; ++phase) CHECK(rep1[static_cast<size_t>(phase)].total() == 1);

  Fast16K2 f2;
  f2.reset(y);
  for (int phase = 0; phase < 16; ++phase) {
    f2.next_llr();
    f2.decide(static_cast<int>(rng() & 1));
  }
  const auto rep2 = f2.op_report();
  for (int phase = 8; phase < 11; ++phase) CHECK(rep2[static_cast<size_t>(phase)].total() == 1);
}

TEST_CASE("fast16 forked at every phase stays equivalent to generic") {
  std::mt19937_64 rng(67);
  for (const Kernel& k : {k1(), k2()}) {
    auto plan = std::make_shared<const WindowPlan>(window_plan(k));
    for (int fork_phase = 0; fork_phase < 16; ++fork_phase) {
      const auto y = random_llrs(rng);
      std::vector<uint8_t> head;
      auto fast = make_fast(k);
      fast->reset(y);
      for (int phase = 0; phase < fork_phase; ++phase) {
        fast->next_llr();
        const int bit = static_cast<int>(rng() & 1);
        fast->decide(bit);
        head.push_back(static_cast<uint8_t>(bit));
      }
      fast->next_llr();
      auto copy = fast->clone();
      // Shared random tail after the diverging bit.
      std::vector<uint8_t> tail(static_cast<size_t>(15 - fork_phase));
      for (auto& b : tail) b = static_cast<uint8_t>(rng() & 1);
      for (int branch_bit = 0; branch_bit < 2; ++branch_bit) {
        KernelProcessor& proc = branch_bit == 0 ? *fast : *copy;
        proc.decide(branch_bit);
        GenericKernelProcessor gen(plan);
        gen.reset(y);
        for (uint8_t b : head) {
          gen.next_llr();
          gen.decide(b);
        }
        gen.next_llr();
        gen.decide(branch_bit);
        for (int phase = fork_phase + 1; phase < 16; ++phase) {
          const double a = proc.next_llr();
          const double b = gen.next_llr();
          CHECK(std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b)));
          const int bit = tail[static_cast<size_t>(phase - fork_phase - 1)];
          proc.decide(bit);
          gen.decide(bit);
        }
      }
    }
  }
}

TEST_CASE("phase order errors") {
  std::vector<double> y(16, 1.0);
  Fast16K1 fast;
  fast.reset(y);
  for (int phase = 0; phase < 16; ++phase) fast.decide(0);
  CHECK_THROWS_AS(fast.next_llr(), std::logic_error);
  CHECK_THROWS_AS(fast.decide(0), std::logic_error);

  auto plan = std::make_shared<const WindowPlan>(window_plan(k2()));
  GenericKernelProcessor gen(plan);
  gen.reset(y);
  for (int phase = 0; phase < 16; ++phase) gen.decide(0);
  CHECK_THROWS_AS(gen.next_llr(), std::logic_error);
  CHECK_THROWS_AS(gen.decide(0), std::logic_error);
}

TEST_CASE("fast16 clone carries state across forks") {
  std::mt19937_64 rng(61);
  for (const Kernel& k : {k1(), k2()}) {
    const auto y = random_llrs(rng);
    std::vector<uint8_t> head;
    auto fast = make_fast(k);
    fast->reset(y);
    for (int phase = 0; phase < 6; ++phase) {
      fast->next_llr();
      const int bit = static_cast<int>(rng() & 1);
      fast->decide(bit);
      head.push_back(static_cast<uint8_t>(bit));
    }
    auto copy = fast->clone();
    CHECK(fast->next_llr() == copy->next_llr());
    // Diverge at phase 6, keep deciding zero afterwards; compare each branch
    // against a generic processor replaying the same decisions.
    auto plan = std::make_shared<const WindowPlan>(window_plan(k));
    for (int branch_bit = 0; branch_bit < 2; ++branch_bit) {
      KernelProcessor& proc = branch_bit == 0 ? *fast : *copy;
      proc.decide(branch_bit);
      GenericKernelProcessor gen(plan);
      gen.reset(y);
      for (uint8_t b : head) {
        gen.next_llr();
        gen.decide(b);
      }
      gen.next_llr();
      gen.decide(branch_bit);
      for (int phase = 7; phase < 16; ++phase) {
        const double a = proc.next_llr();
        const double b = gen.next_llr();
        CHECK(std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b)));
        proc.decide(0);
        gen.decide(0);
      }
    }
  }
}
