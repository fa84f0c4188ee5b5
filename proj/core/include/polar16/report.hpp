#pragma once

#include <string>

#include "polar16/kernel.hpp"

namespace polar16 {

// Per-phase analysis table (input expressions, decoding windows, horizons,
// and for the shipped kernels the measured per-phase operation cost), plus
// partial distances and the polarization rate.
std::string analyze_report_text(const Kernel& k);
std::string analyze_report_csv(const Kernel& k);

// Measured per-phase processor costs; empty for kernels without a fast path.
std::vector<int> measured_phase_costs(const Kernel& k);

}  // namespace polar16
