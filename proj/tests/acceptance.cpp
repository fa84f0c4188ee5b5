// Acceptance suite: runs each shipping criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the failure count.
//
//   acceptance [--criterion N]   (default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "polar16/channel.hpp"
#include "polar16/codec.hpp"
#include "polar16/construct.hpp"
#include "polar16/fast16.hpp"
#include "polar16/parallel.hpp"
#include "polar16/report.hpp"
#include "polar16/rng.hpp"
#include "polar16/simulate.hpp"
#include "polar16/winproc.hpp"

namespace {

using namespace polar16;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<double> random_llrs(RandomStream& rng, int n, double lim = 6.0) {
  std::vector<double> y(static_cast<size_t>(n));
  for (auto& v : y) v = 2.0 * lim * (rng.next_unit() - 0.5);
  return y;
}

std::vector<int> first_frozen(int count) {
  std::vector<int> f(static_cast<size_t>(count));
  std::iota(f.begin(), f.end(), 0);
  return f;
}

double rel_dev(double a, double b) {
  return std::fabs(a - b) / std::max(1.0, std::fabs(b));
}

// --- criterion 1: analysis table regeneration ------------------------------------

Outcome criterion1() {
  const std::vector<std::string> want_u_k1 = {
      "u0 = v0",  "u1 = v1",  "u2 = v2",        "u3 = v4",
      "u4 = v8",  "u5 = v6+v9", "u6 = v5+v6+v10", "u7 = v3",
      "u8 = v12", "u9 = v6",  "u10 = v10",      "u11 = v7",
      "u12 = v11", "u13 = v13", "u14 = v14",    "u15 = v15"};
  const std::vector<std::string> want_d_k1 = {
      "{}", "{}", "{}", "{3}", "{3,5,6,7}", "{3,5,6,7}", "{3,5,6,7}", "{5,6,7}",
      "{5,6,7,11}", "{5,7,11}", "{7,11}", "{11}", "{}", "{}", "{}", "{}"};
  const std::vector<std::string> want_u_k2 = {
      "u0 = v0",  "u1 = v1",  "u2 = v2",        "u3 = v3",
      "u4 = v4",  "u5 = v8",  "u6 = v6+v9",     "u7 = v5+v6+v10",
      "u8 = v6",  "u9 = v10", "u10 = v7",       "u11 = v11",
      "u12 = v12", "u13 = v13", "u14 = v14",    "u15 = v15"};
  const std::vector<std::string> want_d_k2 = {
      "{}", "{}", "{}", "{}", "{}", "{5,6,7}", "{5,6,7}", "{5,6,7}",
      "{5,7}", "{7}", "{}", "{}", "{}", "{}", "{}", "{}"};

  bool ok = true;
  std::ostringstream detail;
  struct Case {
    Kernel k;
    const std::vector<std::string>& u;
    const std::vector<std::string>& d;
    const std::array<int, 16>& costs;
    int max_window;
    int total;
  };
  const Case cases[] = {{k1(), want_u_k1, want_d_k1, phase_costs_k1(), 4, 447},
                        {k2(), want_u_k2, want_d_k2, phase_costs_k2(), 3, 181}};
  for (const auto& c : cases) {
    const WindowPlan plan = window_plan(c.k);
    const auto costs = measured_phase_costs(c.k);
    int total = 0;
    for (int phase = 0; phase < 16; ++phase) {
      const auto u_text = constraint_text(phase, plan.pure_v[static_cast<size_t>(phase)]);
      const auto d_text = window_text(plan.windows[static_cast<size_t>(phase)]);
      if (u_text != c.u[static_cast<size_t>(phase)]) ok = false;
      if (d_text != c.d[static_cast<size_t>(phase)]) ok = false;
      if (costs[static_cast<size_t>(phase)] != c.costs[static_cast<size_t>(phase)]) ok = false;
      total += costs[static_cast<size_t>(phase)];
    }
    if (plan.max_window != c.max_window) ok = false;
    if (total != c.total) ok = false;
    detail << c.k.name << ": max|D| " << plan.max_window << ", total " << total << "  ";
  }
  return {ok, detail.str()};
}

// --- criterion 2: polarization rate ----------------------------------------

Outcome criterion2() {
  std::ostringstream detail;
  bool ok = true;
  for (const Kernel& k : {k1(), k2()}) {
    const double e = profile(k).polarization_rate;
    if (std::fabs(e - 0.51828) > 5e-6) ok = false;
    char buf[64];
    std::snprintf(buf, sizeof buf, "E(%s) = %.6f  ", k.name.c_str(), e);
    detail << buf;
  }
  return {ok, detail.str()};
}

// --- criterion 3: oracle equivalence ----------------------------------------

Outcome criterion3() {
  constexpr int kTrials = 10000;
  double worst_fast = 0.0, worst_brute = 0.0;
  bool ok = true;
  for (const Kernel& k : {k1(), k2()}) {
    const auto plan = std::make_shared<const WindowPlan>(window_plan(k));
    std::vector<double> fast_dev(16, 0.0), brute_dev(16, 0.0);
    parallel_for(16, 0, [&](int, int64_t phase_idx) {
      const int phase = static_cast<int>(phase_idx);
      RandomStream rng(stream_seed(2718, static_cast<uint64_t>(phase) * 2 + (k.name == "k2")));
      GenericKernelProcessor gen(plan);
      auto fast = make_processor(k, ProcessorKind::kFast);
      double df = 0.0, db = 0.0;
      for (int trial = 0; trial < kTrials; ++trial) {
        const auto y = random_llrs(rng, 16);
        std::vector<uint8_t> prefix(static_cast<size_t>(phase));
        for (auto& b : prefix) b = static_cast<uint8_t>(rng.next_bit());

        gen.reset(y);
        fast->reset(y);
        for (uint8_t b : prefix) {
          gen.decide(b);
          fast->decide(b);
        }
        const double g = gen.next_llr();
        const double f = fast->next_llr();
        const double br = kernel_llr_bruteforce(k, prefix, y, phase);
        df = std::max(df, rel_dev(f, g));
        db = std::max(db, rel_dev(g, br));
      }
      fast_dev[static_cast<size_t>(phase)] = df;
      brute_dev[static_cast<size_t>(phase)] = db;
    });
    for (int phase = 0; phase < 16; ++phase) {
      worst_fast = std::max(worst_fast, fast_dev[static_cast<size_t>(phase)]);
      worst_brute = std::max(worst_brute, brute_dev[static_cast<size_t>(phase)]);
    }
  }
  ok = worst_fast <= 1e-9 && worst_brute <= 1e-9;
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |fast-generic| %.2e, max |generic-brute| %.2e",
                worst_fast, worst_brute);
  return {ok, buf};
}

// --- criterion 4: score identity --------------------------------------------

Outcome criterion4() {
  bool ok = true;
  double worst = 0.0;
  const BinMatrix f2 = BinMatrix::from_rows({"10", "11"});
  for (int j = 1; j <= 4; ++j) {
    const BinMatrix fj = kron_power(f2, j);
    const int n = 1 << j;
    RandomStream rng(stream_seed(314, static_cast<uint64_t>(j)));
    for (int trial = 0; trial < 10000; ++trial) {
      const auto y = random_llrs(rng, n);
      std::vector<uint8_t> v(static_cast<size_t>(n));
      for (auto& b : v) b = static_cast<uint8_t>(rng.next_bit());
      const auto c = vec_mat_mul(v, fj);
      double lhs = 0.0;
      for (int i = 0; i < n; ++i) lhs += tau(y[static_cast<size_t>(i)], c[static_cast<size_t>(i)]);
      LayeredLlrState st(j);
      st.load_channel(y);
      double rhs = 0.0;
      for (int i = 0; i < n; ++i) {
        rhs = score_update(rhs, st.current_llr(), v[static_cast<size_t>(i)]);
        st.decide(v[static_cast<size_t>(i)]);
      }
      worst = std::max(worst, rel_dev(lhs, rhs));
    }
  }
  ok = worst <= 1e-9;
  char buf[64];
  std::snprintf(buf, sizeof buf, "max relative gap %.2e", worst);
  return {ok, buf};
}

// --- criterion 5: operation-count invariance ---------------------------------

Outcome criterion5() {
  bool ok = true;
  std::ostringstream detail;
  struct Case {
    Kernel k;
    const std::array<int, 16>& want;
  };
  const Case cases[] = {{k1(), phase_costs_k1()}, {k2(), phase_costs_k2()}};
  for (const auto& c : cases) {
    RandomStream rng(stream_seed(99, c.k.name == "k2"));
    auto proc = make_processor(c.k, ProcessorKind::kFast);
    auto* fast = dynamic_cast<Fast16Base*>(proc.get());
    std::array<OpCounter, 16> first{};
    for (int run = 0; run < 100; ++run) {
      const auto y = random_llrs(rng, 16);
      fast->reset(y);
      for (int phase = 0; phase < 16; ++phase) {
        fast->next_llr();
        fast->decide(rng.next_bit());
      }
      const auto rep = fast->op_report();
      if (run == 0) first = rep;
      for (int phase = 0; phase < 16; ++phase) {
        if (rep[static_cast<size_t>(phase)].total() !=
            static_cast<uint64_t>(c.want[static_cast<size_t>(phase)]))
          ok = false;
        if (!(rep[static_cast<size_t>(phase)] == first[static_cast<size_t>(phase)])) ok = false;
      }
    }
    detail << c.k.name << " per-phase counts stable over 100 inputs  ";
  }
  return {ok, detail.str()};
}

// --- criterion 6: decoder correctness ----------------------------------------

Outcome criterion6() {
  bool ok = true;
  std::ostringstream detail;

  // SCL(1) == SC bit for bit on 1000 random frames.
  {
    RandomStream rng(4242);
    const CodeSpec small = CodeSpec::create(k1(), 1, 8, first_frozen(8));
    const CodeSpec mid = CodeSpec::create(k2(), 2, 128, first_frozen(128));
    for (int trial = 0; trial < 600; ++trial) {
      const auto llr = random_llrs(rng, 16);
      const auto a = sc_decode(small, llr);
      const auto b = scl_decode(small, llr, 1);
      if (a.u != b.u || a.codeword != b.codeword) ok = false;
    }
    for (int trial = 0; trial < 400; ++trial) {
      const auto llr = random_llrs(rng, 256);
      const auto a = sc_decode(mid, llr);
      const auto b = scl_decode(mid, llr, 1);
      if (a.u != b.u || a.codeword != b.codeword) ok = false;
    }
    detail << "scl(1)==sc on 1000 frames  ";
  }

  // Noiseless recovery at n = 16, 256, 4096 for both kernels.
  {
    RandomStream rng(777);
    int recovered = 0, total = 0;
    for (const Kernel& k : {k1(), k2()}) {
      const struct {
        int m;
        int payload;
        int frames;
      } sizes[] = {{1, 8, 50}, {2, 128, 10}, {3, 2048, 2}};
      for (const auto& sz : sizes) {
        int n = 1;
        for (int i = 0; i < sz.m; ++i) n *= 16;
        const CodeSpec spec = CodeSpec::create(k, sz.m, sz.payload, first_frozen(n - sz.payload));
        for (int f = 0; f < sz.frames; ++f) {
          std::vector<uint8_t> payload(static_cast<size_t>(sz.payload));
          for (auto& b : payload) b = static_cast<uint8_t>(rng.next_bit());
          const auto llr = perfect_llr(encode(spec, payload));
          ++total;
          if (sc_decode(spec, llr).payload == payload &&
              scl_decode(spec, llr, 2).payload == payload)
            ++recovered;
        }
      }
    }
    if (recovered != total) ok = false;
    detail << "noiseless " << recovered << "/" << total << "  ";
  }

  // Recursive encoder equals the explicit generator for n <= 256.
  {
    RandomStream rng(31337);
    bool enc_ok = true;
    for (const Kernel& k : {k1(), k2()}) {
      for (int m = 1; m <= 2; ++m) {
        const BinMatrix g = transform_matrix(k, m);
        for (int trial = 0; trial < 20; ++trial) {
          std::vector<uint8_t> u(static_cast<size_t>(g.rows()));
          for (auto& b : u) b = static_cast<uint8_t>(rng.next_bit());
          if (transform_encode(k, m, u) != vec_mat_mul(u, g)) enc_ok = false;
        }
      }
    }
    if (!enc_ok) ok = false;
    detail << "encode==G_m at n<=256";
  }
  return {ok, detail.str()};
}

// --- criterion 7: list-size FER trend ----------------------------------------

Outcome criterion7() {
  const double snr = 2.0;  // pinned mid-range point for the (256,128) code
  const auto built = monte_carlo_construct(k2(), 2, 128, snr, 0.5, 20000, 161803);

  SimConfig cfg;
  cfg.spec = CodeSpec::create(k2(), 2, 128, built.frozen);
  cfg.snr_db = {snr};
  cfg.list_sizes = {1, 8};
  cfg.max_frames = 20000;
  cfg.max_errors = 20000;  // no early stop: full 2e4 frames per point
  cfg.seed = 271828;
  const auto points = simulate_fer(cfg);
  const SimPoint& l1 = points[0];
  const SimPoint& l8 = points[1];

  const bool ok = l1.frames >= 20000 && l8.frames >= 20000 && l8.fer < l1.fer &&
                  l8.ci_hi < l1.ci_lo;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "FER(L=1) %.4g [%.4g, %.4g], FER(L=8) %.4g [%.4g, %.4g] @ %.1f dB", l1.fer,
                l1.ci_lo, l1.ci_hi, l8.fer, l8.ci_lo, l8.ci_hi, snr);
  return {ok, buf};
}

// --- criterion 8: complexity against the instrumented generic baseline --------

Outcome criterion8() {
  bool ok = true;
  std::ostringstream detail;
  struct Case {
    Kernel k;
    int fast_total;
  };
  const Case cases[] = {{k1(), 447}, {k2(), 181}};
  for (const auto& c : cases) {
    const auto plan = std::make_shared<const WindowPlan>(window_plan(c.k));
    RandomStream rng(stream_seed(55, c.k.name == "k2"));
    uint64_t generic_total = 0;
    bool stable = true;
    for (int run = 0; run < 5; ++run) {
      GenericKernelProcessor gen(plan);
      const auto y = random_llrs(rng, 16);
      gen.reset(y);
      for (int phase = 0; phase < 16; ++phase) {
        gen.next_llr();
        gen.decide(rng.next_bit());
      }
      if (run == 0)
        generic_total = gen.ops().total();
      else if (gen.ops().total() != generic_total)
        stable = false;
    }
    const double ratio = static_cast<double>(generic_total) / c.fast_total;
    if (!stable || ratio < 15.0) ok = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s: generic %llu vs fast %d (%.1fx)  ", c.k.name.c_str(),
                  static_cast<unsigned long long>(generic_total), c.fast_total, ratio);
    detail << buf;
  }
  return {ok, detail.str()};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  Outcome (*fn)();
};

const Criterion kCriteria[] = {
    {1, "table regeneration (u_phi, D_phi, per-phase costs)", 1.0, criterion1},
    {2, "polarization rate 0.51828 +- 5e-6", 10.0, criterion2},
    {3, "oracle equivalence, 1e4 trials x 16 phases x 2 kernels", 120.0, criterion3},
    {4, "score identity, 1e4 trials x j in 1..4", 60.0, criterion4},
    {5, "operation-count invariance over 100 random inputs", 10.0, criterion5},
    {6, "decoder correctness (scl1==sc, noiseless, encode==G_m)", 120.0, criterion6},
    {7, "FER(L=8) < FER(L=1) with disjoint Wilson CIs, 2e4 frames", 600.0, criterion7},
    {8, "fast processors >=15x below the generic baseline", 10.0, criterion8},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs <= c.budget_seconds;
    const bool pass = out.pass && in_budget;
    std::printf("%s criterion-%d [%s] (%.2fs%s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                secs, in_budget ? "" : " OVER BUDGET", out.detail.c_str());
    if (!pass) ++failures;
  }
  return failures;
}
