#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "polar16/arikan.hpp"
#include "polar16/binmat.hpp"
#include "polar16/kernel.hpp"
#include "polar16/winproc.hpp"

using namespace polar16;

TEST_CASE("q_fn") {
  CHECK(q_fn(2.0, -3.0) == -2.0);
  CHECK(q_fn(0.0, 5.0) == 0.0);
  CHECK(q_fn(-1.5, -4.0) == 1.5);
}

TEST_CASE("p_fn") {
  CHECK(p_fn(1.5, 2.0, 1) == 0.5);
  CHECK(p_fn(1.5, 2.0, 0) == 3.5);
  CHECK(p_fn(0.0, -2.0, 1) == -2.0);
}

TEST_CASE("tau") {
  CHECK(tau(-1.5, 1) == 0.0);
  CHECK(tau(-1.5, 0) == -1.5);
  CHECK(tau(2.0, 0) == 0.0);
  CHECK(tau(0.0, 0) == 0.0);  // sgn(0) = +1
  CHECK(tau(0.0, 1) == 0.0);
}

TEST_CASE("score_update") {
  CHECK(score_update(0.0, -1.5, 1) == 0.0);
  CHECK(score_update(-2.0, 3.0, 1) == -5.0);
}

TEST_CASE("q/p algebraic properties") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = dist(rng), b = dist(rng);
    CHECK(q_fn(a, b) == q_fn(b, a));
    // Algebraic identity, up to one rounding in each P evaluation.
    CHECK(std::fabs(p_fn(a, b, 0) + p_fn(a, b, 1) - 2.0 * b) <=
          1e-15 * (1.0 + std::fabs(a) + std::fabs(b)));
  }
}

TEST_CASE("layer_llr base cases at t = 1") {
  LayeredLlrState st(1);
  const std::vector<double> y = {1.25, -0.5};
  st.load_channel(y);
  CHECK(layer_llr(st, 0, {}) == q_fn(1.25, -0.5));
  st.decide(1);
  const std::vector<uint8_t> prefix = {1};
  CHECK(layer_llr(st, 1, prefix) == p_fn(1.25, -0.5, 1));
}

TEST_CASE("layer_llr phase order errors") {
  LayeredLlrState st(2);
  const std::vector<double> y = {1.0, 2.0, 3.0, 4.0};
  st.load_channel(y);
  st.decide(0);
  const std::vector<uint8_t> wrong = {1};
  CHECK_THROWS_AS(layer_llr(st, 1, wrong), std::logic_error);   // prefix mismatch
  const std::vector<uint8_t> p2 = {0, 0};
  CHECK_THROWS_AS(layer_llr(st, 2, p2), std::logic_error);      // out of order
  CHECK_THROWS_AS(layer_llr(st, 1, p2), std::invalid_argument); // length mismatch
}

TEST_CASE("layer_llr at t = 4 matches the brute-force kernel oracle") {
  const Kernel f4 = arikan_power_kernel(4);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(-8.0, 8.0);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<double> y(16);
    for (auto& v : y) v = dist(rng);
    const int phase = static_cast<int>(rng() % 16);
    std::vector<uint8_t> prefix(static_cast<size_t>(phase));
    for (auto& b : prefix) b = static_cast<uint8_t>(rng() & 1);

    LayeredLlrState st(4);
    st.load_channel(y);
    const double got = layer_llr(st, phase, prefix);
    const double want = kernel_llr_bruteforce(f4, prefix, y, phase);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("score identity across the transform") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-6.0, 6.0);
  const BinMatrix f2 = BinMatrix::from_rows({"10", "11"});
  for (int j = 1; j <= 4; ++j) {
    const BinMatrix fj = kron_power(f2, j);
    const int n = 1 << j;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> y(static_cast<size_t>(n));
      for (auto& v : y) v = dist(rng);
      std::vector<uint8_t> vbits(static_cast<size_t>(n));
      for (auto& b : vbits) b = static_cast<uint8_t>(rng() & 1);

      const auto c = vec_mat_mul(vbits, fj);
      double lhs = 0.0;
      for (int i = 0; i < n; ++i) lhs += tau(y[static_cast<size_t>(i)], c[static_cast<size_t>(i)]);

      LayeredLlrState st(j);
      st.load_channel(y);
      double rhs = 0.0;
      for (int i = 0; i < n; ++i) {
        rhs = score_update(rhs, st.current_llr(), vbits[static_cast<size_t>(i)]);
        st.decide(vbits[static_cast<size_t>(i)]);
      }
      CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(lhs)));
    }
  }
}

TEST_CASE("a full sequential pass costs exactly t * 2^t operations") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> dist(-4.0, 4.0);
  for (int t = 1; t <= 4; ++t) {
    OpCounter ops;
    LayeredLlrState st(t);
    std::vector<double> y(static_cast<size_t>(1) << t);
    for (auto& v : y) v = dist(rng);
    st.load_channel(y, &ops);
    for (int i = 0; i < (1 << t); ++i) {
      st.current_llr();
      st.decide(static_cast<int>(rng() & 1));
    }
    CHECK(ops.total() == static_cast<uint64_t>(t) << t);
  }
}

TEST_CASE("scores are monotone non-increasing along a path") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> dist(-6.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> y(16);
    for (auto& v : y) v = dist(rng);
    LayeredLlrState st(4);
    st.load_channel(y);
    double r = 0.0;
    for (int i = 0; i < 16; ++i) {
      const int bit = static_cast<int>(rng() & 1);
      const double next = score_update(r, st.current_llr(), bit);
      CHECK(next <= r);
      r = next;
      st.decide(bit);
    }
  }
}
