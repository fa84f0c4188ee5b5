#include "polar16/construct.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "polar16/channel.hpp"
#include "polar16/parallel.hpp"

namespace polar16 {

ConstructionResult monte_carlo_construct(const Kernel& kernel, int m, int freeze_count,
                                         double snr_db, double rate, uint64_t trials,
                                         uint64_t seed, ProcessorKind kind, int threads) {
  if (trials < 1) throw std::invalid_argument("monte_carlo_construct: trials must be >= 1");
  int n = 1;
  for (int i = 0; i < m; ++i) n *= kernel.l;
  if (freeze_count < 0 || freeze_count > n)
    throw std::invalid_argument("monte_carlo_construct: bad freeze count");

  if (threads <= 0) threads = default_thread_count();
  std::vector<std::vector<uint64_t>> partial(
      static_cast<size_t>(threads), std::vector<uint64_t>(static_cast<size_t>(n), 0));
  const std::vector<uint8_t> zero_codeword(static_cast<size_t>(n), 0);

  // Per-trial streams keep the counts independent of scheduling; each worker
  // owns a scratch accumulator and the totals are summed afterwards.
  parallel_for(static_cast<int64_t>(trials), threads, [&](int worker, int64_t trial) {
    RandomStream rng(stream_seed(seed, static_cast<uint64_t>(trial)));
    const auto llr = awgn_llr(zero_codeword, snr_db, rate, rng);
    const auto errors = genie_sc_errors(kernel, m, llr, kind);
    auto& acc = partial[static_cast<size_t>(worker)];
    for (int i = 0; i < n; ++i) acc[static_cast<size_t>(i)] += errors[static_cast<size_t>(i)];
  });

  ConstructionResult res;
  res.error_counts.assign(static_cast<size_t>(n), 0);
  for (const auto& acc : partial)
    for (int i = 0; i < n; ++i) res.error_counts[static_cast<size_t>(i)] += acc[static_cast<size_t>(i)];

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const uint64_t ca = res.error_counts[static_cast<size_t>(a)];
    const uint64_t cb = res.error_counts[static_cast<size_t>(b)];
    if (ca != cb) return ca > cb;
    return a > b;  // ties freeze the larger index
  });
  res.frozen.assign(order.begin(), order.begin() + freeze_count);
  std::sort(res.frozen.begin(), res.frozen.end());
  return res;
}

std::string frozen_to_text(const std::vector<int>& frozen) {
  std::ostringstream out;
  for (int f : frozen) out << f << '\n';
  return out.str();
}

std::vector<int> frozen_from_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<int> frozen;
  int v;
  while (in >> v) frozen.push_back(v);
  return frozen;
}

}  // namespace polar16
