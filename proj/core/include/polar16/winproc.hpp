/*
Window-based kernel processing for arbitrary kernels, plus the brute-force
oracles the fast processors are checked against.
*/
#pragma once

#include <array>
#include <memory>

#include "polar16/processor.hpp"

namespace polar16 {

// Correctness-baseline processor: at each phase enumerates the 2^|D_phi|
// window assignments per hypothesis bit, recomputing the path score chain
// per candidate. Not the fast path.
class GenericKernelProcessor final : public KernelProcessor {
 public:
  explicit GenericKernelProcessor(std::shared_ptr<const WindowPlan> plan);

  int kernel_size() const override { return plan_->kernel.l; }
  int phase() const override { return phase_; }
  void reset(std::span<const double> y) override;
  double next_llr() override;
  void decide(int bit) override;
  std::unique_ptr<KernelProcessor> clone() const override;
  const OpCounter& ops() const override { return ops_; }
  void zero_ops() override { ops_.reset(); }

 private:
  double candidate_score(int h, std::span<const uint8_t> v);

  std::shared_ptr<const WindowPlan> plan_;
  std::vector<double> y_;
  std::vector<uint8_t> u_;
  int phase_ = 0;
  OpCounter ops_;
  LayeredLlrState scratch_;
};

// One-shot generic LLR for a decided prefix.
double kernel_llr_generic(const WindowPlan& plan, std::span<const uint8_t> u_prefix,
                          std::span<const double> y, OpCounter* ops = nullptr);

// ML scoring of every suffix completion of u_prefix.(b): the set of codewords
// is walked in Gray-code order and scored through two byte-indexed penalty
// tables, an arithmetic path fully independent of the processors.
double kernel_llr_bruteforce(const Kernel& k, std::span<const uint8_t> u_prefix,
                             std::span<const double> y, int phase);

// Exact subchannel probability at m = 1: sum over all suffix completions of
// prod_i W(c_i | y_i), with per-symbol likelihood pairs (W(y|0), W(y|1)).
double exact_probability(const Kernel& k, std::span<const uint8_t> u_prefix_plus_bit,
                         std::span<const std::array<double, 2>> y_probs);

}  // namespace polar16
