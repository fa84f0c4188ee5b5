#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polar16/codec.hpp"

namespace polar16 {

struct ConstructionResult {
  std::vector<uint64_t> error_counts;  // genie-aided SC mistakes per index
  std::vector<int> frozen;             // the freeze_count worst indices
};

// Genie-aided Monte Carlo construction: transmit the all-zero input over the
// AWGN channel at snr_db, score each SC decision against zero, correct it and
// continue. Freezes the freeze_count indices with the largest error counts,
// breaking ties toward the larger index. Deterministic for a fixed seed
// regardless of thread count.
ConstructionResult monte_carlo_construct(const Kernel& kernel, int m, int freeze_count,
                                         double snr_db, double rate, uint64_t trials,
                                         uint64_t seed,
                                         ProcessorKind kind = ProcessorKind::kAuto,
                                         int threads = 0);

// One frozen-set index per line.
std::string frozen_to_text(const std::vector<int>& frozen);
std::vector<int> frozen_from_text(const std::string& text);

}  // namespace polar16
