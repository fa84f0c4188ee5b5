/*
Kernel-level analysis: the K1/K2 constants, the K = T * F2^t decomposition,
per-phase input constraints, decoding windows and partial-distance profiles.
*/
#pragma once

#include <span>
#include <string>
#include <vector>

#include "polar16/binmat.hpp"

namespace polar16 {

// BEC scaling exponents of the two shipped kernels, kept as metadata only.
inline constexpr double kScalingExponentK1 = 3.346;
inline constexpr double kScalingExponentK2 = 3.45;

struct Kernel {
  int l = 0;           // kernel dimension
  int t = 0;           // log2(l)
  BinMatrix matrix;    // invertible l x l
  std::string name;    // "k1", "k2", "arikan", or a file stem

  uint64_t row(int i) const { return matrix.row_word(i); }
};

// Invertible, and l a power of two. Named constants additionally verify the
// not-column-permutable-to-upper-triangular property.
Kernel make_kernel(BinMatrix m, std::string name);

Kernel k1();
Kernel k2();
Kernel arikan_kernel();               // F2
Kernel arikan_power_kernel(int t);    // F2^{kron t}, windows are all empty

Kernel kernel_from_text(std::string_view text, std::string name);

// True when some column permutation takes m to upper-triangular form.
bool is_colperm_upper_triangular(const BinMatrix& m);

// T with T * F2^{kron t} = K (F2^{kron t} is an involution).
BinMatrix decompose(const Kernel& k);

// One row of the minimum-span constraint system:
//   u_phase = sum_{s in u_terms} u_s  +  sum_{t in v_terms} v_t,   j = max(v_terms).
struct PhaseConstraint {
  int phase = 0;
  std::vector<int> u_terms;
  std::vector<int> v_terms;
  int j = 0;
};

struct WindowPlan {
  Kernel kernel;
  BinMatrix theta;                          // minimum-span form of (S I)
  std::vector<PhaseConstraint> constraints; // one per phase
  std::vector<int> h;                       // h_phi = max_{phi' <= phi} j_phi'
  std::vector<std::vector<int>> windows;    // D_phi, ascending indices
  int max_window = 0;

  // u_phi written purely in terms of v (column supports of T^{-1});
  // this is the form tabulated for the shipped kernels.
  std::vector<std::vector<int>> pure_v;
};

WindowPlan window_plan(const Kernel& k);

struct KernelProfile {
  std::vector<int> partial_distances;  // d_i per row
  double polarization_rate = 0.0;      // E(K) = (1/l) sum log_l d_i
};

// Exhaustive-span partial distances; exact for l <= 16.
KernelProfile profile(const Kernel& k);

// Reconstructs u from v via the constraint rows; must agree with v * T^{-1}.
std::vector<uint8_t> reconstruct_u(const WindowPlan& plan, std::span<const uint8_t> v);

// Canonical text for one constraint, e.g. "u5 = v6+v9".
std::string constraint_text(int phase, const std::vector<int>& v_terms);
std::string window_text(const std::vector<int>& window);

}  // namespace polar16
