#include "polar16/kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace polar16 {

namespace {

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

bool is_invertible(const BinMatrix& m) {
  if (m.rows() != m.cols()) return false;
  try {
    invert(m);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

}  // namespace

bool is_colperm_upper_triangular(const BinMatrix& m) {
  // Column-permutable to upper triangular iff columns can be ordered
  // c_0..c_{l-1} with support(row_i) contained in {c_i..c_{l-1}}. Scanning
  // rows bottom-up, the one column row_i may add on top of the already
  // chosen tail is forced (or free when the support is already covered).
  const int l = m.rows();
  std::vector<bool> chosen(static_cast<size_t>(l), false);
  for (int i = l - 1; i >= 0; --i) {
    std::vector<int> fresh;
    for (int c = 0; c < l; ++c)
      if (m.get(i, c) && !chosen[static_cast<size_t>(c)]) fresh.push_back(c);
    if (fresh.size() > 1) return false;
    if (fresh.size() == 1) chosen[static_cast<size_t>(fresh[0])] = true;
    // An already-covered support leaves slot i to any unused column.
  }
  return true;
}

Kernel make_kernel(BinMatrix m, std::string name) {
  if (m.rows() != m.cols()) throw std::invalid_argument("kernel: matrix not square");
  if (!is_power_of_two(m.rows())) throw std::invalid_argument("kernel: l not a power of two");
  if (m.rows() > 64) throw std::invalid_argument("kernel: l > 64 unsupported");
  if (!is_invertible(m)) throw std::invalid_argument("kernel: matrix not invertible");
  Kernel k;
  k.l = m.rows();
  k.t = std::countr_zero(static_cast<unsigned>(m.rows()));
  k.matrix = std::move(m);
  k.name = std::move(name);
  return k;
}

Kernel k1() {
  static const BinMatrix m = BinMatrix::from_rows({
      "1000000000000000",
      "1100000000000000",
      "1010000000000000",
      "1000100000000000",
      "1000000010000000",
      "1100000011000000",
      "1100110000000000",
      "1111000000000000",
      "1000100010001000",
      "1010011011000000",
      "0110110010100000",
      "1111111100000000",
      "1111000011110000",
      "1100110011001100",
      "1010101010101010",
      "1111111111111111",
  });
  Kernel k = make_kernel(m, "k1");
  if (is_colperm_upper_triangular(k.matrix))
    throw std::logic_error("k1: degenerate kernel");
  return k;
}

Kernel k2() {
  // Row i of K2 is row sigma(i) of K1. This is the permutation convention
  // that reproduces the tabulated constraints and windows.
  static constexpr int kSigma[16] = {0, 1, 2, 7, 3, 4, 5, 6, 9, 10, 11, 12, 8, 13, 14, 15};
  const Kernel base = k1();
  BinMatrix m(16, 16);
  for (int i = 0; i < 16; ++i)
    for (int c = 0; c < 16; ++c)
      if (base.matrix.get(kSigma[i], c)) m.set(i, c, 1);
  Kernel k = make_kernel(std::move(m), "k2");
  if (is_colperm_upper_triangular(k.matrix))
    throw std::logic_error("k2: degenerate kernel");
  return k;
}

Kernel arikan_kernel() {
  return make_kernel(BinMatrix::from_rows({"10", "11"}), "arikan");
}

Kernel arikan_power_kernel(int t) {
  if (t < 1) throw std::invalid_argument("arikan_power_kernel: t must be >= 1");
  return make_kernel(kron_power(BinMatrix::from_rows({"10", "11"}), t),
                     "arikan^" + std::to_string(t));
}

Kernel kernel_from_text(std::string_view text, std::string name) {
  return make_kernel(parse_bin_matrix(text), std::move(name));
}

BinMatrix decompose(const Kernel& k) {
  // F2^{kron t} squares to the identity, so T = K * F2^{kron t}.
  const BinMatrix f = kron_power(BinMatrix::from_rows({"10", "11"}), k.t);
  return multiply(k.matrix, f);
}

WindowPlan window_plan(const Kernel& k) {
  const int l = k.l;
  WindowPlan plan;
  plan.kernel = k;

  const BinMatrix t_mat = decompose(k);
  const BinMatrix s_mat = reverse_columns(transpose(t_mat));
  plan.theta = min_span_form(hconcat(s_mat, BinMatrix::identity(l)));

  plan.constraints.resize(static_cast<size_t>(l));
  plan.h.resize(static_cast<size_t>(l));
  plan.windows.resize(static_cast<size_t>(l));

  // Row l-1-phase of theta encodes u_phase; columns c < l hold u_{l-1-c},
  // columns l+t hold v_t.
  for (int phase = 0; phase < l; ++phase) {
    const int r = l - 1 - phase;
    PhaseConstraint pc;
    pc.phase = phase;
    if (plan.theta.leading(r) != r)
      throw std::logic_error("window_plan: leading structure violated");
    for (int c = r + 1; c < l; ++c)
      if (plan.theta.get(r, c)) pc.u_terms.push_back(l - 1 - c);
    for (int c = l; c < 2 * l; ++c)
      if (plan.theta.get(r, c)) pc.v_terms.push_back(c - l);
    std::sort(pc.u_terms.begin(), pc.u_terms.end());
    if (pc.v_terms.empty())
      throw std::logic_error("window_plan: constraint row without v terms");
    pc.j = pc.v_terms.back();
    plan.constraints[static_cast<size_t>(phase)] = std::move(pc);
  }

  std::vector<bool> determined(static_cast<size_t>(l), false);
  int h = 0;
  for (int phase = 0; phase < l; ++phase) {
    h = std::max(h, plan.constraints[static_cast<size_t>(phase)].j);
    plan.h[static_cast<size_t>(phase)] = h;
    determined[static_cast<size_t>(plan.constraints[static_cast<size_t>(phase)].j)] = true;
    auto& win = plan.windows[static_cast<size_t>(phase)];
    for (int p = 0; p <= h; ++p)
      if (!determined[static_cast<size_t>(p)]) win.push_back(p);
    plan.max_window = std::max(plan.max_window, static_cast<int>(win.size()));
  }

  const BinMatrix t_inv = invert(t_mat);
  plan.pure_v.resize(static_cast<size_t>(l));
  for (int phase = 0; phase < l; ++phase)
    for (int row = 0; row < l; ++row)
      if (t_inv.get(row, phase)) plan.pure_v[static_cast<size_t>(phase)].push_back(row);

  return plan;
}

KernelProfile profile(const Kernel& k) {
  const int l = k.l;
  if (l > 20) throw std::invalid_argument("profile: exhaustive span enumeration needs l <= 20");
  KernelProfile prof;
  prof.partial_distances.resize(static_cast<size_t>(l));
  for (int i = 0; i < l; ++i) {
    const uint64_t row_i = k.row(i);
    const int span = l - 1 - i;  // rows i+1 .. l-1
    int best = l + 1;
    for (uint64_t mask = 0; mask < (uint64_t{1} << span); ++mask) {
      uint64_t w = row_i;
      uint64_t m = mask;
      while (m) {
        const int b = std::countr_zero(m);
        w ^= k.row(i + 1 + b);
        m &= m - 1;
      }
      best = std::min(best, std::popcount(w));
    }
    prof.partial_distances[static_cast<size_t>(i)] = best;
  }
  double e = 0.0;
  for (int i = 0; i < l; ++i)
    e += std::log2(static_cast<double>(prof.partial_distances[static_cast<size_t>(i)]));
  prof.polarization_rate = e / (l * std::log2(static_cast<double>(l)));
  return prof;
}

std::vector<uint8_t> reconstruct_u(const WindowPlan& plan, std::span<const uint8_t> v) {
  const int l = plan.kernel.l;
  if (static_cast<int>(v.size()) != l) throw std::invalid_argument("reconstruct_u: bad v size");
  std::vector<uint8_t> u(static_cast<size_t>(l), 0);
  for (int phase = 0; phase < l; ++phase) {
    const auto& pc = plan.constraints[static_cast<size_t>(phase)];
    uint8_t bit = 0;
    for (int s : pc.u_terms) bit ^= u[static_cast<size_t>(s)];
    for (int t : pc.v_terms) bit ^= v[static_cast<size_t>(t)];
    u[static_cast<size_t>(phase)] = bit;
  }
  return u;
}

std::string constraint_text(int phase, const std::vector<int>& v_terms) {
  std::string s = "u" + std::to_string(phase) + " = ";
  for (size_t i = 0; i < v_terms.size(); ++i) {
    if (i) s += "+";
    s += "v" + std::to_string(v_terms[i]);
  }
  return s;
}

std::string window_text(const std::vector<int>& window) {
  std::string s = "{";
  for (size_t i = 0; i < window.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(window[i]);
  }
  s += "}";
  return s;
}

}  // namespace polar16
