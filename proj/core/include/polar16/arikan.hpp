/*
Min-sum LLR engine for the Arikan transform: the Q/P recursions, the tau
path-score penalty, and a layered state that walks phases sequentially while
caching intermediate LLRs and partial sums.
*/
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace polar16 {

using Llr = double;
using Score = double;

// Perfect-channel LLR magnitude; keeps tau and score arithmetic finite.
inline constexpr double kLlrClip = 1e6;

// Tally of counted operations: one per real addition/subtraction and one per
// comparison (min/max). Sign flips, XORs and indexing are free.
struct OpCounter {
  uint64_t additions = 0;
  uint64_t comparisons = 0;

  uint64_t total() const { return additions + comparisons; }
  void reset() { additions = 0, comparisons = 0; }

  OpCounter& operator+=(const OpCounter& o) {
    additions += o.additions;
    comparisons += o.comparisons;
    return *this;
  }
  friend OpCounter operator-(OpCounter a, const OpCounter& b) {
    a.additions -= b.additions;
    a.comparisons -= b.comparisons;
    return a;
  }
  bool operator==(const OpCounter&) const = default;
};

// sgn(0) is +1 throughout.
inline double q_fn(double a, double b) {
  const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
  return sign * std::min(std::fabs(a), std::fabs(b));
}

inline double p_fn(double a, double b, int c) { return (c ? -a : a) + b; }

inline double tau(double s, int v) {
  return ((s < 0.0) == (v != 0)) ? 0.0 : -std::fabs(s);
}

inline double score_update(double r, double s, int v) { return r + tau(s, v); }

// Sequential SC state over a transform of size 2^t. Layer 0 holds the channel
// LLRs; layer t emits S_t^{(phase)} for the decided prefix. decide() pushes
// partial sums down, current_llr() recomputes only the stale layers.
class LayeredLlrState {
 public:
  LayeredLlrState() = default;
  explicit LayeredLlrState(int stages);

  void load_channel(std::span<const double> llrs, OpCounter* ops = nullptr);

  int stages() const { return t_; }
  int size() const { return size_; }
  int phase() const { return phase_; }
  std::span<const uint8_t> decided() const { return {v_.data(), v_.size()}; }

  double current_llr();
  void decide(int bit);

 private:
  void cascade(int layer, int branch, int bit, int branch_phase);

  int t_ = 0;
  int size_ = 1;
  int phase_ = 0;
  std::vector<std::vector<double>> llr_;    // llr_[layer][branch]
  std::vector<std::vector<uint8_t>> pend_;  // pending even-phase input bits
  std::vector<int> valid_;                  // branch phase each layer holds, -1 if none
  std::vector<uint8_t> v_;
  OpCounter* ops_ = nullptr;
};

// S_t^{(phase)}(v_prefix, y) for the channel already loaded into state.
// The prefix must match the state's decided bits (a fresh state is advanced
// in place); anything else is a phase-order error.
double layer_llr(LayeredLlrState& state, int phase, std::span<const uint8_t> v_prefix);

}  // namespace polar16
