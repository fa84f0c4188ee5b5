#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polar16/codec.hpp"

namespace polar16 {

struct SimConfig {
  CodeSpec spec;
  std::vector<double> snr_db;     // E_b/N_0 grid, non-empty
  std::vector<int> list_sizes;    // non-empty
  uint64_t max_frames = 10000;    // per grid point
  uint64_t max_errors = 100;      // early-stop threshold per point
  uint64_t seed = 1;
  ProcessorKind kind = ProcessorKind::kAuto;
  int threads = 0;                // 0: POLAR16_THREADS / hardware default
};

struct SimPoint {
  double snr_db = 0.0;
  int list_size = 1;
  uint64_t frames = 0;
  uint64_t errors = 0;
  double fer = 0.0;
  double ci_lo = 0.0;      // Wilson 95% interval
  double ci_hi = 0.0;
  double ops_mean = 0.0;   // counted kernel-processing operations per frame
};

// Wilson 95% score interval for errors/frames.
std::pair<double, double> wilson_interval(uint64_t errors, uint64_t frames);

// Runs every (snr, list) grid point: random payloads, BPSK/AWGN, SCL decode,
// stop at max_frames or max_errors. Channel noise is keyed by (snr, frame) so
// list sizes see identical realizations; results do not depend on threads.
std::vector<SimPoint> simulate_fer(const SimConfig& config);

// CSV with the conventions documented in '#' header lines; deterministic
// byte-for-byte for a fixed config.
std::string sim_to_csv(const SimConfig& config, const std::vector<SimPoint>& points);

// Companion gnuplot script plotting FER curves from the CSV.
std::string sim_gnuplot_script(const std::string& csv_path, const SimConfig& config);

}  // namespace polar16
