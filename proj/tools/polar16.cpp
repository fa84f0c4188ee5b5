// polar16: analyze kernels, construct frozen sets, run FER simulations and
// cross-check the kernel processors against their oracles.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
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

Kernel resolve_kernel(const std::string& name) {
  if (name == "k1") return k1();
  if (name == "k2") return k2();
  if (name == "arikan") return arikan_kernel();
  if (name.rfind("file:", 0) == 0) {
    const std::string path = name.substr(5);
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--kernel", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string stem = path;
    if (const auto slash = stem.find_last_of('/'); slash != std::string::npos)
      stem = stem.substr(slash + 1);
    return kernel_from_text(ss.str(), stem);
  }
  throw CLI::ValidationError("--kernel", "expected k1, k2, arikan or file:<path>");
}

int infer_m(const Kernel& k, int n, int m) {
  if (m > 0) {
    if (n > 0) {
      int check = 1;
      for (int i = 0; i < m; ++i) check *= k.l;
      if (check != n) throw CLI::ValidationError("--n", "n must equal l^m");
    }
    return m;
  }
  if (n <= 0) throw CLI::ValidationError("--n", "give --n or --m");
  int mm = 0, v = 1;
  while (v < n) {
    v *= k.l;
    ++mm;
  }
  if (v != n) throw CLI::ValidationError("--n", "n must be a power of the kernel size");
  return mm;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_analyze(const std::string& kernel_name, bool csv, bool check_costs) {
  const Kernel k = resolve_kernel(kernel_name);
  std::cout << (csv ? analyze_report_csv(k) : analyze_report_text(k));
  if (!check_costs) return 0;
  const auto costs = measured_phase_costs(k);
  if (costs.empty()) {
    std::cerr << "no fast processor for kernel " << k.name << ", cost check skipped\n";
    return 2;
  }
  const auto& want = (k.name == "k1") ? phase_costs_k1() : phase_costs_k2();
  bool ok = true;
  for (int phase = 0; phase < 16; ++phase)
    ok = ok && costs[static_cast<size_t>(phase)] == want[static_cast<size_t>(phase)];
  std::cout << "cost check: " << (ok ? "ok" : "MISMATCH") << "\n";
  return ok ? 0 : 1;
}

int cmd_selftest(const std::string& kernel_name, uint64_t trials, uint64_t seed) {
  const Kernel k = resolve_kernel(kernel_name);
  if (k.l != 16) throw CLI::ValidationError("--kernel", "selftest needs a 16x16 kernel");
  const auto plan = std::make_shared<const WindowPlan>(window_plan(k));
  const bool has_fast = !measured_phase_costs(k).empty();

  double max_fast = 0.0, max_generic = 0.0;
  RandomStream rng(seed);
  for (uint64_t trial = 0; trial < trials; ++trial) {
    const int phase = static_cast<int>(trial % 16);
    std::vector<double> y(16);
    for (auto& v : y) v = 12.0 * (rng.next_unit() - 0.5);
    std::vector<uint8_t> prefix(static_cast<size_t>(phase));
    for (auto& b : prefix) b = static_cast<uint8_t>(rng.next_bit());

    const double brute = kernel_llr_bruteforce(k, prefix, y, phase);
    const double generic = kernel_llr_generic(*plan, prefix, y);
    max_generic = std::max(max_generic,
                           std::fabs(generic - brute) / std::max(1.0, std::fabs(brute)));
    if (has_fast) {
      auto proc = make_processor(k, ProcessorKind::kFast);
      proc->reset(y);
      for (uint8_t b : prefix) proc->decide(b);
      const double fast = proc->next_llr();
      max_fast = std::max(max_fast,
                          std::fabs(fast - generic) / std::max(1.0, std::fabs(generic)));
    }
  }
  std::printf("selftest %s: %llu trials\n", k.name.c_str(),
              static_cast<unsigned long long>(trials));
  std::printf("  max |generic - bruteforce| (rel): %.3e\n", max_generic);
  if (has_fast) std::printf("  max |fast - generic|      (rel): %.3e\n", max_fast);
  const bool ok = max_generic <= 1e-9 && max_fast <= 1e-9;
  std::printf("  %s\n", ok ? "ok" : "FAILED");
  return ok ? 0 : 1;
}

int cmd_construct(const std::string& kernel_name, int n, int m, int k_payload, double snr,
                  uint64_t trials, uint64_t seed, const std::string& out_path) {
  const Kernel kern = resolve_kernel(kernel_name);
  const int mm = infer_m(kern, n, m);
  int nn = 1;
  for (int i = 0; i < mm; ++i) nn *= kern.l;
  if (k_payload < 1 || k_payload >= nn) throw CLI::ValidationError("--k", "bad payload size");
  const double rate = static_cast<double>(k_payload) / nn;
  const auto res =
      monte_carlo_construct(kern, mm, nn - k_payload, snr, rate, trials, seed);
  const std::string text = frozen_to_text(res.frozen);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  std::cerr << "constructed (" << nn << ", " << k_payload << ") frozen set from "
            << trials << " genie trials at " << snr << " dB\n";
  return 0;
}

int cmd_simulate(const std::string& kernel_name, int n, int m, int k_payload,
                 std::vector<double> snrs, std::vector<int> lists, uint64_t frames,
                 uint64_t errors, uint64_t seed, const std::string& out_path,
                 const std::string& frozen_path, uint64_t construct_trials, int crc_width,
                 const std::string& processor, bool gnuplot) {
  const Kernel kern = resolve_kernel(kernel_name);
  const int mm = infer_m(kern, n, m);
  int nn = 1;
  for (int i = 0; i < mm; ++i) nn *= kern.l;

  std::optional<CrcSpec> crc;
  if (crc_width > 0) crc = CrcSpec{crc_width, 0x07};
  const int overhead = crc ? crc->width : 0;

  std::vector<int> frozen;
  if (!frozen_path.empty()) {
    std::ifstream in(frozen_path);
    if (!in) throw std::runtime_error("cannot open " + frozen_path);
    std::stringstream ss;
    ss << in.rdbuf();
    frozen = frozen_from_text(ss.str());
  } else {
    const double rate = static_cast<double>(k_payload) / nn;
    std::cerr << "constructing frozen set: " << construct_trials << " genie trials at "
              << snrs.front() << " dB\n";
    frozen = monte_carlo_construct(kern, mm, nn - k_payload - overhead, snrs.front(), rate,
                                   construct_trials, stream_seed(seed, 0xC0DE))
                 .frozen;
  }

  SimConfig cfg;
  cfg.spec = CodeSpec::create(kern, mm, k_payload, std::move(frozen), crc);
  cfg.snr_db = std::move(snrs);
  cfg.list_sizes = std::move(lists);
  cfg.max_frames = frames;
  cfg.max_errors = errors;
  cfg.seed = seed;
  if (processor == "generic")
    cfg.kind = ProcessorKind::kGeneric;
  else if (processor == "fast")
    cfg.kind = ProcessorKind::kFast;

  const auto points = simulate_fer(cfg);
  const std::string csv = sim_to_csv(cfg, points);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
    if (gnuplot) write_file(out_path + ".gp", sim_gnuplot_script(out_path, cfg));
    for (const auto& p : points)
      std::printf("snr %.3f L %d: fer %.4g (%llu/%llu), ops/frame %.0f\n", p.snr_db,
                  p.list_size, p.fer, static_cast<unsigned long long>(p.errors),
                  static_cast<unsigned long long>(p.frames), p.ops_mean);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar codes with 16x16 kernels: analysis, construction, simulation"};
  app.require_subcommand(1);

  std::string kernel_name = "k2";
  int n = 0, m = 0, k_payload = 0;
  uint64_t seed = 1, frames = 10000, errors = 100, trials = 10000;
  std::vector<double> snrs;
  std::vector<int> lists = {1};

  auto* analyze = app.add_subcommand("analyze", "per-phase kernel report");
  bool csv = false, costs = false;
  analyze->add_option("--kernel", kernel_name, "k1|k2|arikan|file:<path>");
  analyze->add_flag("--csv", csv, "emit CSV instead of aligned text");
  analyze->add_flag("--costs", costs, "check measured per-phase costs");

  auto* construct = app.add_subcommand("construct", "Monte Carlo frozen-set construction");
  std::string out_path;
  double csnr = 1.5;
  construct->add_option("--kernel", kernel_name);
  construct->add_option("--n", n, "code length l^m");
  construct->add_option("--m", m, "number of kernel levels");
  construct->add_option("--k", k_payload, "payload bits")->required();
  construct->add_option("--snr", csnr, "construction Eb/N0, dB");
  construct->add_option("--frames", trials, "genie trials");
  construct->add_option("--seed", seed);
  construct->add_option("--out", out_path, "output path (stdout default)");

  auto* simulate = app.add_subcommand("simulate", "AWGN FER simulation");
  std::string frozen_path, processor = "auto";
  uint64_t construct_trials = 20000;
  int crc_width = 0;
  bool gnuplot = false;
  simulate->add_option("--kernel", kernel_name);
  simulate->add_option("--n", n);
  simulate->add_option("--m", m);
  simulate->add_option("--k", k_payload)->required();
  simulate->add_option("--snr", snrs, "Eb/N0 grid, dB")->required()->expected(-1);
  simulate->add_option("--list", lists, "list sizes")->expected(-1);
  simulate->add_option("--frames", frames, "max frames per point");
  simulate->add_option("--errors", errors, "stop after this many frame errors");
  simulate->add_option("--seed", seed);
  simulate->add_option("--out", out_path, "CSV output path");
  simulate->add_option("--frozen", frozen_path, "frozen-set file (else auto-construct)");
  simulate->add_option("--construct-trials", construct_trials, "auto-construction trials");
  simulate->add_option("--crc", crc_width, "CRC width, 0 = none (poly x^8+x^2+x+1)");
  simulate->add_option("--processor", processor, "auto|fast|generic");
  simulate->add_flag("--gnuplot", gnuplot, "also write a gnuplot script next to --out");

  auto* selftest = app.add_subcommand("selftest", "oracle-equivalence trials");
  selftest->add_option("--kernel", kernel_name);
  selftest->add_option("--trials", trials, "number of random trials");
  selftest->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(kernel_name, csv, costs);
    if (selftest->parsed()) return cmd_selftest(kernel_name, trials, seed);
    if (construct->parsed())
      return cmd_construct(kernel_name, n, m, k_payload, csnr, trials, seed, out_path);
    if (simulate->parsed())
      return cmd_simulate(kernel_name, n, m, k_payload, snrs, lists, frames, errors, seed,
                          out_path, frozen_path, construct_trials, crc_width, processor,
                          gnuplot);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
