#include "polar16/winproc.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace polar16 {

GenericKernelProcessor::GenericKernelProcessor(std::shared_ptr<const WindowPlan> plan)
    : plan_(std::move(plan)), scratch_(plan_->kernel.t) {
  y_.resize(static_cast<size_t>(plan_->kernel.l));
  u_.reserve(static_cast<size_t>(plan_->kernel.l));
}

void GenericKernelProcessor::reset(std::span<const double> y) {
  if (static_cast<int>(y.size()) != plan_->kernel.l)
    throw std::invalid_argument("GenericKernelProcessor: expected l channel LLRs");
  std::copy(y.begin(), y.end(), y_.begin());
  u_.clear();
  phase_ = 0;
}

double GenericKernelProcessor::candidate_score(int h, std::span<const uint8_t> v) {
  scratch_.load_channel(y_, &ops_);
  double r = 0.0;
  for (int p = 0; p <= h; ++p) {
    const double s = scratch_.current_llr();
    r = score_update(r, s, v[static_cast<size_t>(p)]);
    ++ops_.additions;
    scratch_.decide(v[static_cast<size_t>(p)]);
  }
  return r;
}

double GenericKernelProcessor::next_llr() {
  const int l = plan_->kernel.l;
  if (phase_ >= l) throw std::logic_error("GenericKernelProcessor: phase out of order");
  const int phi = phase_;
  const int h = plan_->h[static_cast<size_t>(phi)];
  const auto& window = plan_->windows[static_cast<size_t>(phi)];
  const int wbits = static_cast<int>(window.size());

  // Which constraint row determines each non-window position.
  std::vector<int> owner(static_cast<size_t>(h) + 1, -1);
  for (int i = 0; i <= phi; ++i) {
    const int j = plan_->constraints[static_cast<size_t>(i)].j;
    if (j <= h) owner[static_cast<size_t>(j)] = i;
  }

  std::vector<uint8_t> v(static_cast<size_t>(h) + 1, 0);
  double best[2];
  for (int b = 0; b < 2; ++b) {
    double acc = -std::numeric_limits<double>::infinity();
    // Ascending widx walks window assignments in lexicographic order with the
    // lowest window position as the most significant bit; strict improvement
    // keeps the lexicographically smallest argmax.
    for (int widx = 0; widx < (1 << wbits); ++widx) {
      for (int wpos = 0; wpos < wbits; ++wpos)
        v[static_cast<size_t>(window[static_cast<size_t>(wpos)])] =
            static_cast<uint8_t>((widx >> (wbits - 1 - wpos)) & 1);
      // Window bits feed determined positions after them, so fill in index order.
      for (int p = 0; p <= h; ++p) {
        const int own = owner[static_cast<size_t>(p)];
        if (own < 0) continue;
        const auto& pc = plan_->constraints[static_cast<size_t>(own)];
        uint8_t bit = (own == phi) ? static_cast<uint8_t>(b) : u_[static_cast<size_t>(own)];
        for (int s : pc.u_terms) bit ^= u_[static_cast<size_t>(s)];
        for (int t : pc.v_terms)
          if (t != pc.j) bit ^= v[static_cast<size_t>(t)];
        v[static_cast<size_t>(p)] = bit & 1;
      }
      const double r = candidate_score(h, v);
      if (widx == 0) {
        acc = r;
      } else {
        if (r > acc) acc = r;
        ++ops_.comparisons;
      }
    }
    best[b] = acc;
  }
  ++ops_.additions;
  return best[0] - best[1];
}

void GenericKernelProcessor::decide(int bit) {
  if (phase_ >= plan_->kernel.l) throw std::logic_error("GenericKernelProcessor: phase out of order");
  u_.push_back(static_cast<uint8_t>(bit & 1));
  ++phase_;
}

std::unique_ptr<KernelProcessor> GenericKernelProcessor::clone() const {
  return std::make_unique<GenericKernelProcessor>(*this);
}

double kernel_llr_generic(const WindowPlan& plan, std::span<const uint8_t> u_prefix,
                          std::span<const double> y, OpCounter* ops) {
  auto shared = std::make_shared<const WindowPlan>(plan);
  GenericKernelProcessor proc(shared);
  proc.reset(y);
  for (uint8_t b : u_prefix) proc.decide(b);
  const double s = proc.next_llr();
  if (ops) *ops += proc.ops();
  return s;
}

double kernel_llr_bruteforce(const Kernel& k, std::span<const uint8_t> u_prefix,
                             std::span<const double> y, int phase) {
  const int l = k.l;
  if (l > 20) throw std::invalid_argument("kernel_llr_bruteforce: kernel too large");
  if (phase < 0 || phase >= l) throw std::invalid_argument("kernel_llr_bruteforce: bad phase");
  if (static_cast<int>(u_prefix.size()) != phase)
    throw std::invalid_argument("kernel_llr_bruteforce: |u_prefix| must equal phase");
  if (static_cast<int>(y.size()) != l)
    throw std::invalid_argument("kernel_llr_bruteforce: expected l channel LLRs");

  // score(c) = sum_i tau(y_i, c_i) = base + sum_{i in supp(c)} d_i with
  // d_i = min(0, -y_i) - min(0, y_i); split into byte-indexed tables.
  const int lo = std::min(l, 8);
  const int hi = l - lo;
  double base = 0.0;
  std::vector<double> diff(static_cast<size_t>(l));
  for (int i = 0; i < l; ++i) {
    const double yi = y[static_cast<size_t>(i)];
    base += std::min(0.0, yi);
    diff[static_cast<size_t>(i)] = std::min(0.0, -yi) - std::min(0.0, yi);
  }
  std::vector<double> tab_lo(static_cast<size_t>(1) << lo, 0.0);
  for (uint32_t m = 1; m < tab_lo.size(); ++m) {
    const int b = std::countr_zero(m);
    tab_lo[m] = tab_lo[m & (m - 1)] + diff[static_cast<size_t>(b)];
  }
  std::vector<double> tab_hi(static_cast<size_t>(1) << hi, 0.0);
  for (uint32_t m = 1; m < tab_hi.size(); ++m) {
    const int b = std::countr_zero(m);
    tab_hi[m] = tab_hi[m & (m - 1)] + diff[static_cast<size_t>(lo + b)];
  }
  const uint32_t lo_mask = (lo == 0) ? 0u : ((uint32_t{1} << lo) - 1);
  auto score = [&](uint32_t c) {
    return base + tab_lo[c & lo_mask] + tab_hi[c >> lo];
  };

  uint32_t prefix_word = 0;
  for (int i = 0; i < phase; ++i)
    if (u_prefix[static_cast<size_t>(i)] & 1) prefix_word ^= static_cast<uint32_t>(k.row(i));

  const int suffix = l - 1 - phase;
  double best[2];
  for (int b = 0; b < 2; ++b) {
    uint32_t c = prefix_word ^ (b ? static_cast<uint32_t>(k.row(phase)) : 0u);
    double acc = score(c);
    for (uint64_t s = 1; s < (uint64_t{1} << suffix); ++s) {
      c ^= static_cast<uint32_t>(k.row(phase + 1 + std::countr_zero(s)));
      acc = std::max(acc, score(c));
    }
    best[b] = acc;
  }
  return best[0] - best[1];
}

double exact_probability(const Kernel& k, std::span<const uint8_t> u_prefix_plus_bit,
                         std::span<const std::array<double, 2>> y_probs) {
  const int l = k.l;
  if (l > 20) throw std::invalid_argument("exact_probability: kernel too large");
  const int known = static_cast<int>(u_prefix_plus_bit.size());
  if (known < 1 || known > l) throw std::invalid_argument("exact_probability: bad prefix size");
  if (static_cast<int>(y_probs.size()) != l)
    throw std::invalid_argument("exact_probability: expected l likelihood pairs");

  uint32_t prefix_word = 0;
  for (int i = 0; i < known; ++i)
    if (u_prefix_plus_bit[static_cast<size_t>(i)] & 1) prefix_word ^= static_cast<uint32_t>(k.row(i));

  const int suffix = l - known;
  double total = 0.0;
  for (uint64_t s = 0; s < (uint64_t{1} << suffix); ++s) {
    uint32_t c = prefix_word;
    uint64_t m = s;
    while (m) {
      c ^= static_cast<uint32_t>(k.row(known + std::countr_zero(m)));
      m &= m - 1;
    }
    double p = 1.0;
    for (int i = 0; i < l; ++i) p *= y_probs[static_cast<size_t>(i)][(c >> i) & 1];
    total += p;
  }
  return total;
}

}  // namespace polar16
