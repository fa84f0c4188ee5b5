/*
Reduced-complexity processors for the two shipped 16x16 kernels. LLRs for the
kernel inputs are assembled from Arikan-transform intermediates with shared
arrays (L/X/Y/Z/Ybar), an FHT-scored coset at the widest phase, and reused
path-score maxima, at a fixed per-phase operation budget (447 ops total for
K1, 181 for K2).
*/
#pragma once

#include <array>
#include <memory>

#include "polar16/processor.hpp"
#include "polar16/winproc.hpp"

namespace polar16 {

// Per-phase operation budgets the processors are held to.
const std::array<int, 16>& phase_costs_k1();
const std::array<int, 16>& phase_costs_k2();

// Unnormalized Walsh-Hadamard transform, out_k = sum_i (-1)^{<i,k>} s_i.
std::array<double, 8> fht8(const std::array<double, 8>& s);

class Fast16Base : public KernelProcessor {
 public:
  int kernel_size() const override { return 16; }
  int phase() const override { return phase_; }
  void reset(std::span<const double> y) override;
  double next_llr() override;
  void decide(int bit) override;
  const OpCounter& ops() const override { return ops_; }
  void zero_ops() override { ops_.reset(); }

  // Per-phase counts for the last fully processed codeword.
  // Throws std::logic_error while processing is incomplete.
  std::array<OpCounter, 16> op_report() const;

 protected:
  explicit Fast16Base(std::shared_ptr<const WindowPlan> plan);

  virtual double process_phase(int phi) = 0;
  virtual void on_decide(int phi, int bit) = 0;

  // Counted primitives.
  double q(double a, double b) {
    ++ops_.comparisons;
    return q_fn(a, b);
  }
  double p(double a, double b, int c) {
    ++ops_.additions;
    return p_fn(a, b, c);
  }
  // Extends a path score by both values of the next input bit; the matching
  // side is a free copy, the other costs one addition.
  void score_pair(double r, double s, double& r0, double& r1) {
    ++ops_.additions;
    if (s < 0.0)
      r0 = r + s, r1 = r;
    else
      r0 = r, r1 = r - s;
  }
  double final_diff(double a, double b) {
    ++ops_.additions;
    return a - b;
  }
  // Max over values[0..n) with strict improvement; first (lexicographically
  // smallest) argmax wins ties. Costs n-1 comparisons.
  double max_scan(const double* values, int n, int* argmax);
  void fht_in_place(double* data, int n);  // n log2 n additions

  // Arikan input bit of a transform layer: the XOR of decided v positions
  // feeding branch `branch` of layer `layer` at branch phase `p`.
  static int input_bit(int layer, int branch, int p, uint32_t vmask);
  // Layer-1 phase-0 inputs c_0..c_7 of a candidate mask, packed low bit first.
  static uint32_t chan0_bits(uint32_t vmask);

  // Plain sequential phase: recomputes the layers the phase schedule marks
  // stale, reading partial sums from vmask. Counts 15/1/3/7 ops by phase.
  double plain_llr(int phi, uint32_t vmask);

  std::shared_ptr<const WindowPlan> plan_;
  std::array<double, 16> y_{};
  std::array<double, 8> s1_{};  // layer 1 branch values
  std::array<double, 4> s2_{};
  std::array<double, 2> s3_{};
  double s4_ = 0.0;
  std::array<double, 2> lbank_[8];  // L[c][i] = S_1^{(1)}(c, (y_i, y_{i+8}))
  std::array<uint8_t, 16> u_{};
  uint32_t vmask_ = 0;  // single-path v bits, complete once windows resolve
  int phase_ = 0;
  bool llr_ready_ = false;
  double llr_cache_ = 0.0;
  OpCounter ops_;
  std::array<OpCounter, 16> phase_ops_{};
};

class Fast16K1 final : public Fast16Base {
 public:
  Fast16K1();
  std::unique_ptr<KernelProcessor> clone() const override;

 private:
  double process_phase(int phi) override;
  void on_decide(int phi, int bit) override;

  double phase3();
  double phase4();
  double phase5();
  double phase6();
  double phase8();

  // Candidate masks over v_0..v_7 indexed by w = (v3 v5 v6 v7).
  std::array<uint32_t, 16> cand_{};
  std::array<double, 8> fht_{};
  double x_[4][4] = {};                        // S_2^{(2)} for all (c_i, c_{i+4})
  std::array<double, 8> yv_[2] = {};           // distinct S_3^{(4)} values
  std::array<uint8_t, 16> ysel_[2] = {};       // candidate -> yv index
  std::array<double, 16> r7_{};                // R(v_0^7) per candidate
  double r8_[16][2] = {};                      // R(v_0^8) by (w, u4)
  double m4_[2] = {};
  int a4_[2] = {};
  double r9_[16][2] = {};                      // by (w, u5)
  double m5_[2] = {};
  int a5_[2] = {};
  double ybar_[2][16] = {};                    // S_3^{(5)} per candidate
  double r10_[16][2] = {};                     // by (w, u6)
  double g6_[2][2] = {};                       // maxima by (u6, v3)
  // Phase 8 family: candidates over (v5, v6, v7, v11) after v3 resolves.
  std::array<uint32_t, 16> cand8_{};
  std::array<double, 16> w2v_{};               // distinct S_2^{(3)} values
  std::array<uint8_t, 16> w2sel_[4] = {};      // branch -> candidate -> index
  std::array<double, 32> s36v_{};              // distinct S_3^{(6)} values
  std::array<uint8_t, 16> s36sel_[2] = {};
  double r12_[16][2] = {};                     // by (w8, u8)
  std::array<double, 32> leaf_{};              // keyed (u8 v6 v5 v7 v11)
  std::array<double, 16> t16_{};
  std::array<double, 8> t8_{};
  std::array<double, 4> t4_{};
  std::array<double, 2> t2_{};
  int win8_ = 0;  // winning phase-8 candidate, fixed at decide(12)
};

class Fast16K2 final : public Fast16Base {
 public:
  Fast16K2();
  std::unique_ptr<KernelProcessor> clone() const override;

 private:
  double process_phase(int phi) override;
  void on_decide(int phi, int bit) override;

  double phase5();
  double phase6();
  double phase7();

  // Candidate masks over v_0..v_7 indexed by w = (v5 v6 v7).
  std::array<uint32_t, 8> cand_{};
  std::array<double, 4> fht4_{};
  std::array<double, 8> xv_{};            // distinct S_2^{(2)} values
  std::array<uint8_t, 8> xsel_[4] = {};   // branch -> candidate -> index
  std::array<double, 4> yv_[2] = {};      // distinct S_3^{(4)} values
  std::array<uint8_t, 8> ysel_[2] = {};
  std::array<double, 8> r7p_{};           // R contribution of v_4^7 per candidate
  double r8_[8][2] = {};                  // by (w, u5)
  double m5_[2] = {};
  int a5_[2] = {};
  double r9_[8][2] = {};                  // by (w, u6)
  double m6_[2] = {};
  int a6_[2] = {};
  double ybar_[2][8] = {};                // S_3^{(5)} per candidate
  double r10_[8][2] = {};                 // by (w, u7)
  std::array<double, 16> leaf_{};         // keyed (u7 v6 v5 v7)
  std::array<double, 8> t8_{};
  std::array<double, 4> t4_{};
  std::array<double, 2> t2_{};
  int win_ = 0;  // winning candidate, fixed at decide(10)
};

}  // namespace polar16
