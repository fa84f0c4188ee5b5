#include "polar16/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "polar16/channel.hpp"
#include "polar16/parallel.hpp"

namespace polar16 {

std::pair<double, double> wilson_interval(uint64_t errors, uint64_t frames) {
  if (frames == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(frames);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct FrameOutcome {
  uint8_t error = 0;
  uint64_t ops = 0;
};

FrameOutcome run_frame(const SimConfig& cfg, int snr_index, int list_size, uint64_t frame) {
  const CodeSpec& spec = cfg.spec;
  RandomStream payload_rng(stream_seed(stream_seed(cfg.seed, 1), frame));
  std::vector<uint8_t> payload(static_cast<size_t>(spec.k));
  for (auto& b : payload) b = static_cast<uint8_t>(payload_rng.next_bit());

  const auto codeword = encode(spec, payload);
  RandomStream noise_rng(
      stream_seed(stream_seed(cfg.seed, 1000 + static_cast<uint64_t>(snr_index)), frame));
  const double rate = static_cast<double>(spec.k) / spec.n;
  const auto llr =
      awgn_llr(codeword, cfg.snr_db[static_cast<size_t>(snr_index)], rate, noise_rng);

  const DecodeResult res = scl_decode(spec, llr, list_size, cfg.kind);
  FrameOutcome out;
  out.ops = res.kernel_ops;
  out.error = res.payload != payload ? 1 : 0;
  return out;
}

}  // namespace

std::vector<SimPoint> simulate_fer(const SimConfig& cfg) {
  if (cfg.snr_db.empty() || cfg.list_sizes.empty())
    throw std::invalid_argument("simulate_fer: empty snr or list grid");
  if (cfg.max_frames < 1) throw std::invalid_argument("simulate_fer: max_frames must be >= 1");

  const int threads = cfg.threads > 0 ? cfg.threads : default_thread_count();
  std::vector<SimPoint> points;
  for (int si = 0; si < static_cast<int>(cfg.snr_db.size()); ++si) {
    for (int list_size : cfg.list_sizes) {
      SimPoint pt;
      pt.snr_db = cfg.snr_db[static_cast<size_t>(si)];
      pt.list_size = list_size;

      // Frames are evaluated in deterministic per-frame streams; batches are
      // scanned in index order so early stopping is thread-count independent.
      const uint64_t batch = std::max<uint64_t>(64, static_cast<uint64_t>(threads) * 16);
      uint64_t done = 0;
      uint64_t errors = 0;
      double ops_sum = 0.0;
      bool stop = false;
      std::vector<FrameOutcome> outcomes;
      while (!stop && done < cfg.max_frames) {
        const uint64_t todo = std::min<uint64_t>(batch, cfg.max_frames - done);
        outcomes.assign(static_cast<size_t>(todo), FrameOutcome{});
        parallel_for(static_cast<int64_t>(todo), threads, [&](int, int64_t i) {
          outcomes[static_cast<size_t>(i)] =
              run_frame(cfg, si, list_size, done + static_cast<uint64_t>(i));
        });
        for (uint64_t i = 0; i < todo; ++i) {
          errors += outcomes[static_cast<size_t>(i)].error;
          ops_sum += static_cast<double>(outcomes[static_cast<size_t>(i)].ops);
          ++done;
          if (errors >= cfg.max_errors) {
            stop = true;
            break;
          }
        }
      }
      pt.frames = done;
      pt.errors = errors;
      pt.fer = done ? static_cast<double>(errors) / static_cast<double>(done) : 0.0;
      std::tie(pt.ci_lo, pt.ci_hi) = wilson_interval(errors, done);
      pt.ops_mean = done ? ops_sum / static_cast<double>(done) : 0.0;
      points.push_back(pt);
    }
  }
  return points;
}

std::string sim_to_csv(const SimConfig& cfg, const std::vector<SimPoint>& points) {
  std::ostringstream out;
  char buf[256];
  out << "# polar16 FER simulation\n";
  out << "# code: n=" << cfg.spec.n << " k=" << cfg.spec.k << " m=" << cfg.spec.m
      << " kernel=" << cfg.spec.kernel.name;
  if (cfg.spec.crc) out << " crc" << cfg.spec.crc->width;
  out << "\n";
  out << "# channel: BPSK/AWGN, sigma^2 = 1/(2*R*10^(EbN0/10)), R = k/n"
         " (CRC bits counted as overhead), LLR = 2y/sigma^2\n";
  out << "# seed: " << cfg.seed << ", max_frames: " << cfg.max_frames
      << ", max_errors: " << cfg.max_errors << "\n";
  out << "snr_db,list,frames,errors,fer,ci_lo,ci_hi,ops_mean\n";
  for (const SimPoint& p : points) {
    std::snprintf(buf, sizeof buf, "%.3f,%d,%llu,%llu,%.8g,%.8g,%.8g,%.8g\n", p.snr_db,
                  p.list_size, static_cast<unsigned long long>(p.frames),
                  static_cast<unsigned long long>(p.errors), p.fer, p.ci_lo, p.ci_hi, p.ops_mean);
    out << buf;
  }
  return out.str();
}

std::string sim_gnuplot_script(const std::string& csv_path, const SimConfig& cfg) {
  std::ostringstream out;
  out << "set datafile separator ','\n";
  out << "set logscale y\n";
  out << "set xlabel 'E_b/N_0, dB'\n";
  out << "set ylabel 'FER'\n";
  out << "set grid\n";
  out << "set key bottom left\n";
  out << "plot ";
  bool first = true;
  for (int list_size : cfg.list_sizes) {
    if (!first) out << ", \\\n     ";
    first = false;
    out << "'" << csv_path << "' using 1:($2==" << list_size << "?$5:1/0) with linespoints"
        << " title '" << cfg.spec.kernel.name << " L=" << list_size << "'";
  }
  out << "\n";
  return out.str();
}

}  // namespace polar16
