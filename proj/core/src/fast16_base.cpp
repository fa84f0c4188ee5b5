#include "polar16/fast16.hpp"

#include <bit>
#include <stdexcept>

namespace polar16 {

const std::array<int, 16>& phase_costs_k1() {
  static const std::array<int, 16> k = {15, 1, 3, 21, 127, 48, 95, 1, 127, 1, 1, 1, 1, 1, 3, 1};
  return k;
}

const std::array<int, 16>& phase_costs_k2() {
  static const std::array<int, 16> k = {15, 1, 3, 1, 7, 67, 24, 47, 1, 1, 1, 1, 7, 1, 3, 1};
  return k;
}

std::array<double, 8> fht8(const std::array<double, 8>& s) {
  std::array<double, 8> d = s;
  for (int len = 1; len < 8; len <<= 1) {
    for (int i = 0; i < 8; i += len << 1) {
      for (int j = i; j < i + len; ++j) {
        const double a = d[static_cast<size_t>(j)];
        const double b = d[static_cast<size_t>(j + len)];
        d[static_cast<size_t>(j)] = a + b;
        d[static_cast<size_t>(j + len)] = a - b;
      }
    }
  }
  return d;
}

Fast16Base::Fast16Base(std::shared_ptr<const WindowPlan> plan) : plan_(std::move(plan)) {}

void Fast16Base::reset(std::span<const double> y) {
  if (y.size() != 16) throw std::invalid_argument("Fast16: expected 16 channel LLRs");
  std::copy(y.begin(), y.end(), y_.begin());
  u_.fill(0);
  vmask_ = 0;
  phase_ = 0;
  llr_ready_ = false;
  for (auto& po : phase_ops_) po.reset();
}

double Fast16Base::next_llr() {
  if (phase_ >= 16) throw std::logic_error("Fast16: phase out of order");
  if (llr_ready_) return llr_cache_;
  const OpCounter before = ops_;
  llr_cache_ = process_phase(phase_);
  phase_ops_[static_cast<size_t>(phase_)] = ops_ - before;
  llr_ready_ = true;
  return llr_cache_;
}

void Fast16Base::decide(int bit) {
  if (phase_ >= 16) throw std::logic_error("Fast16: phase out of order");
  if (!llr_ready_) next_llr();  // phase state feeds later phases
  u_[static_cast<size_t>(phase_)] = static_cast<uint8_t>(bit & 1);
  on_decide(phase_, bit & 1);
  ++phase_;
  llr_ready_ = false;
}

std::array<OpCounter, 16> Fast16Base::op_report() const {
  if (phase_ != 16) throw std::logic_error("Fast16: op_report before all phases processed");
  return phase_ops_;
}

double Fast16Base::max_scan(const double* values, int n, int* argmax) {
  double best = values[0];
  int bi = 0;
  for (int i = 1; i < n; ++i) {
    ++ops_.comparisons;
    if (values[i] > best) {
      best = values[i];
      bi = i;
    }
  }
  if (argmax) *argmax = bi;
  return best;
}

void Fast16Base::fht_in_place(double* d, int n) {
  for (int len = 1; len < n; len <<= 1) {
    for (int i = 0; i < n; i += len << 1) {
      for (int j = i; j < i + len; ++j) {
        const double a = d[j];
        const double b = d[j + len];
        d[j] = a + b;
        d[j + len] = a - b;
      }
    }
  }
  ops_.additions += static_cast<uint64_t>(n) * std::countr_zero(static_cast<unsigned>(n));
}

namespace {

// XOR pattern of v positions feeding layer-1/2 branch inputs: phase p of
// branch i collects v_{B*p+q} over q in [B] with q a bitwise superset of i.
constexpr uint32_t superset_pattern(int branch, int width_log2, int p) {
  const int bcount = 1 << width_log2;
  uint32_t pat = 0;
  for (int q = 0; q < bcount; ++q)
    if ((q & branch) == branch) pat |= uint32_t{1} << (bcount * p + q);
  return pat;
}

}  // namespace

int Fast16Base::input_bit(int layer, int branch, int p, uint32_t vmask) {
  switch (layer) {
    case 4:
      return static_cast<int>((vmask >> p) & 1u);
    case 3: {
      const uint32_t pair = (vmask >> (2 * p)) & 3u;
      return branch == 0 ? static_cast<int>((pair ^ (pair >> 1)) & 1u)
                         : static_cast<int>((pair >> 1) & 1u);
    }
    case 2:
      return std::popcount(vmask & superset_pattern(branch, 2, p)) & 1;
    case 1:
      return std::popcount(vmask & superset_pattern(branch, 3, p)) & 1;
    default:
      throw std::logic_error("input_bit: bad layer");
  }
}

uint32_t Fast16Base::chan0_bits(uint32_t vmask) {
  uint32_t c = 0;
  for (int i = 0; i < 8; ++i)
    c |= static_cast<uint32_t>(std::popcount(vmask & superset_pattern(i, 3, 0)) & 1) << i;
  return c;
}

double Fast16Base::plain_llr(int phi, uint32_t vmask) {
  if (phi == 0) {
    for (int i = 0; i < 8; ++i) s1_[static_cast<size_t>(i)] = q(y_[static_cast<size_t>(i)], y_[static_cast<size_t>(i + 8)]);
    for (int i = 0; i < 4; ++i) s2_[static_cast<size_t>(i)] = q(s1_[static_cast<size_t>(i)], s1_[static_cast<size_t>(i + 4)]);
    for (int i = 0; i < 2; ++i) s3_[static_cast<size_t>(i)] = q(s2_[static_cast<size_t>(i)], s2_[static_cast<size_t>(i + 2)]);
    s4_ = q(s3_[0], s3_[1]);
    return s4_;
  }
  const int tz = std::countr_zero(static_cast<unsigned>(phi));
  for (int layer = 4 - tz; layer <= 4; ++layer) {
    const int p = phi >> (4 - layer);
    const bool odd = (p & 1) != 0;
    switch (layer) {
      case 1:
        for (int i = 0; i < 8; ++i)
          s1_[static_cast<size_t>(i)] =
              odd ? this->p(y_[static_cast<size_t>(i)], y_[static_cast<size_t>(i + 8)], input_bit(1, i, p - 1, vmask))
                  : q(y_[static_cast<size_t>(i)], y_[static_cast<size_t>(i + 8)]);
        break;
      case 2:
        for (int i = 0; i < 4; ++i)
          s2_[static_cast<size_t>(i)] =
              odd ? this->p(s1_[static_cast<size_t>(i)], s1_[static_cast<size_t>(i + 4)], input_bit(2, i, p - 1, vmask))
                  : q(s1_[static_cast<size_t>(i)], s1_[static_cast<size_t>(i + 4)]);
        break;
      case 3:
        for (int i = 0; i < 2; ++i)
          s3_[static_cast<size_t>(i)] =
              odd ? this->p(s2_[static_cast<size_t>(i)], s2_[static_cast<size_t>(i + 2)], input_bit(3, i, p - 1, vmask))
                  : q(s2_[static_cast<size_t>(i)], s2_[static_cast<size_t>(i + 2)]);
        break;
      case 4:
        s4_ = odd ? this->p(s3_[0], s3_[1], input_bit(4, 0, p - 1, vmask)) : q(s3_[0], s3_[1]);
        break;
      default:
        break;
    }
  }
  return s4_;
}

}  // namespace polar16
