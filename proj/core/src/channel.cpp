#include "polar16/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polar16/arikan.hpp"

namespace polar16 {

double awgn_sigma(double snr_db, double rate) {
  if (rate <= 0.0 || rate > 1.0) throw std::invalid_argument("awgn: rate must be in (0, 1]");
  return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, snr_db / 10.0)));
}

std::vector<double> awgn_llr(std::span<const uint8_t> codeword, double snr_db, double rate,
                             RandomStream& rng) {
  const double sigma = awgn_sigma(snr_db, rate);
  const double scale = 2.0 / (sigma * sigma);
  std::vector<double> llr(codeword.size());
  for (size_t i = 0; i < codeword.size(); ++i) {
    const double x = codeword[i] ? -1.0 : 1.0;
    const double y = x + sigma * rng.next_gaussian();
    llr[i] = std::clamp(scale * y, -kLlrClip, kLlrClip);
  }
  return llr;
}

std::vector<double> perfect_llr(std::span<const uint8_t> codeword) {
  std::vector<double> llr(codeword.size());
  for (size_t i = 0; i < codeword.size(); ++i) llr[i] = codeword[i] ? -kLlrClip : kLlrClip;
  return llr;
}

}  // namespace polar16
