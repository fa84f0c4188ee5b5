#include "polar16/arikan.hpp"

#include <bit>
#include <stdexcept>

namespace polar16 {

LayeredLlrState::LayeredLlrState(int stages) : t_(stages) {
  if (stages < 0 || stages > 20) throw std::invalid_argument("LayeredLlrState: bad stage count");
  size_ = 1 << t_;
  llr_.resize(static_cast<size_t>(t_) + 1);
  pend_.resize(static_cast<size_t>(t_) + 1);
  for (int layer = 0; layer <= t_; ++layer) {
    llr_[static_cast<size_t>(layer)].assign(static_cast<size_t>(1) << (t_ - layer), 0.0);
    pend_[static_cast<size_t>(layer)].assign(static_cast<size_t>(1) << (t_ - layer), 0);
  }
  valid_.assign(static_cast<size_t>(t_) + 1, -1);
  v_.reserve(static_cast<size_t>(size_));
}

void LayeredLlrState::load_channel(std::span<const double> llrs, OpCounter* ops) {
  if (static_cast<int>(llrs.size()) != size_)
    throw std::invalid_argument("load_channel: expected 2^t LLRs");
  for (int i = 0; i < size_; ++i) llr_[0][static_cast<size_t>(i)] = llrs[static_cast<size_t>(i)];
  phase_ = 0;
  std::fill(valid_.begin(), valid_.end(), -1);
  valid_[0] = 0;
  v_.clear();
  ops_ = ops;
}

double LayeredLlrState::current_llr() {
  if (phase_ >= size_) throw std::logic_error("current_llr: all phases decided");
  for (int layer = 1; layer <= t_; ++layer) {
    const int nb = 1 << (t_ - layer);
    const int p = phase_ >> (t_ - layer);
    if (valid_[static_cast<size_t>(layer)] == p) continue;
    auto& cur = llr_[static_cast<size_t>(layer)];
    const auto& child = llr_[static_cast<size_t>(layer) - 1];
    for (int b = 0; b < nb; ++b) {
      const double a = child[static_cast<size_t>(b)];
      const double c = child[static_cast<size_t>(b + nb)];
      if ((p & 1) == 0) {
        cur[static_cast<size_t>(b)] = q_fn(a, c);
        if (ops_) ++ops_->comparisons;
      } else {
        cur[static_cast<size_t>(b)] = p_fn(a, c, pend_[static_cast<size_t>(layer)][static_cast<size_t>(b)]);
        if (ops_) ++ops_->additions;
      }
    }
    valid_[static_cast<size_t>(layer)] = p;
  }
  return llr_[static_cast<size_t>(t_)][0];
}

void LayeredLlrState::decide(int bit) {
  if (phase_ >= size_) throw std::logic_error("decide: all phases decided");
  v_.push_back(static_cast<uint8_t>(bit & 1));
  cascade(t_, 0, bit & 1, phase_);
  ++phase_;
}

void LayeredLlrState::cascade(int layer, int branch, int bit, int branch_phase) {
  if (layer == 0) return;
  auto& pend = pend_[static_cast<size_t>(layer)][static_cast<size_t>(branch)];
  if ((branch_phase & 1) == 0) {
    pend = static_cast<uint8_t>(bit);
    return;
  }
  const int nb = 1 << (t_ - layer);
  cascade(layer - 1, branch, pend ^ bit, branch_phase >> 1);
  cascade(layer - 1, branch + nb, bit, branch_phase >> 1);
}

double layer_llr(LayeredLlrState& state, int phase, std::span<const uint8_t> v_prefix) {
  if (phase < 0 || phase >= state.size()) throw std::invalid_argument("layer_llr: phase out of range");
  if (static_cast<int>(v_prefix.size()) != phase)
    throw std::invalid_argument("layer_llr: prefix length must equal phase");
  const auto decided = state.decided();
  if (state.phase() == phase) {
    for (int i = 0; i < phase; ++i)
      if (decided[static_cast<size_t>(i)] != (v_prefix[static_cast<size_t>(i)] & 1))
        throw std::logic_error("layer_llr: prefix disagrees with cached partial sums");
    return state.current_llr();
  }
  if (state.phase() == 0) {
    for (int i = 0; i < phase; ++i) state.decide(v_prefix[static_cast<size_t>(i)]);
    return state.current_llr();
  }
  throw std::logic_error("layer_llr: phase out of order w.r.t. cached partial sums");
}

}  // namespace polar16
