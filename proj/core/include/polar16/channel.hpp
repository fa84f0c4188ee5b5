#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polar16/rng.hpp"

namespace polar16 {

// BPSK over AWGN: c = 0 -> +1, c = 1 -> -1, sigma^2 = 1 / (2 R 10^{snr/10}),
// LLR = 2 y / sigma^2, clipped to +-kLlrClip.
double awgn_sigma(double snr_db, double rate);
std::vector<double> awgn_llr(std::span<const uint8_t> codeword, double snr_db, double rate,
                             RandomStream& rng);

// Noise-free channel LLRs (clipped hard values), used by noiseless tests.
std::vector<double> perfect_llr(std::span<const uint8_t> codeword);

}  // namespace polar16
