#include <bit>
#include <cmath>
#include <stdexcept>

#include "polar16/fast16.hpp"

namespace polar16 {

namespace {

std::shared_ptr<const WindowPlan> k2_plan() {
  static const auto plan = std::make_shared<const WindowPlan>(window_plan(k2()));
  return plan;
}

struct Bank {
  double val[16];
  uint32_t key[16];
  int n = 0;

  int get_or_missing(uint32_t k) const {
    for (int i = 0; i < n; ++i)
      if (key[i] == k) return i;
    return -1;
  }
  int add(uint32_t k, double v) {
    key[n] = k;
    val[n] = v;
    return n++;
  }
};

}  // namespace

Fast16K2::Fast16K2() : Fast16Base(k2_plan()) {}

std::unique_ptr<KernelProcessor> Fast16K2::clone() const {
  return std::make_unique<Fast16K2>(*this);
}

double Fast16K2::process_phase(int phi) {
  switch (phi) {
    case 0:
    case 1:
    case 2:
    case 3:
    case 4:
      return plain_llr(phi, vmask_);
    case 5:
      return phase5();
    case 6:
      return phase6();
    case 7:
      return phase7();
    case 8: {  // u8 = v6
      const int base = u_[7] << 1;
      return final_diff(t4_[static_cast<size_t>(base | 0)], t4_[static_cast<size_t>(base | 1)]);
    }
    case 9: {  // u9 = v10 = u7 ^ v5 ^ v6
      const int off = u_[7] ^ u_[8];
      const int base = (u_[7] << 2) | (u_[8] << 1);
      return final_diff(t8_[static_cast<size_t>(base | off)], t8_[static_cast<size_t>(base | (1 ^ off))]);
    }
    case 10: {  // u10 = v7
      const int v5 = u_[9] ^ u_[7] ^ u_[8];
      const int base = (u_[7] << 3) | (u_[8] << 2) | (v5 << 1);
      return final_diff(leaf_[static_cast<size_t>(base | 0)], leaf_[static_cast<size_t>(base | 1)]);
    }
    case 11:
      // Single path; layer 3 at branch phase 5 comes back from Ybar.
      s3_[0] = ybar_[0][win_];
      s3_[1] = ybar_[1][win_];
      return plain_llr(11, vmask_);
    case 12: {
      const uint32_t c = chan0_bits(vmask_);
      for (int i = 0; i < 8; ++i)
        s1_[static_cast<size_t>(i)] = lbank_[i][(c >> i) & 1u];
      return plain_llr(12, vmask_);
    }
    case 13:
    case 14:
    case 15:
      return plain_llr(phi, vmask_);
    default:
      throw std::logic_error("Fast16K2: bad phase");
  }
}

double Fast16K2::phase5() {
  // Candidates w = (v5 v6 v7); h_5 = 8, hypothesis u5 = v8.
  const uint32_t base = vmask_ & 0x1fu;  // v0..v4
  for (int w = 0; w < 8; ++w) {
    const uint32_t v5 = static_cast<uint32_t>(w >> 2) & 1u;
    const uint32_t v6 = static_cast<uint32_t>(w >> 1) & 1u;
    const uint32_t v7 = static_cast<uint32_t>(w) & 1u;
    cand_[static_cast<size_t>(w)] = base | (v5 << 5) | (v6 << 6) | (v7 << 7);
  }

  // R contribution of v_4^7 from the FHT of the S_2^{(1)} values cached at
  // phase 4; the decided-prefix part is a shared constant and cancels.
  std::array<double, 4> s = s2_;
  if ((vmask_ >> 4) & 1u) s[0] = -s[0];  // c0 carries v4
  fht_in_place(s.data(), 4);
  fht4_ = s;
  for (int w = 0; w < 8; ++w) {
    const int k = (((w >> 2) & 1) << 1) | ((w >> 1) & 1);
    const int g = std::popcount(static_cast<unsigned>(w)) & 1;
    r7p_[static_cast<size_t>(w)] = 0.5 * (g ? -fht4_[static_cast<size_t>(k)] : fht4_[static_cast<size_t>(k)]);
  }

  for (int i = 0; i < 8; ++i)
    for (int c = 0; c < 2; ++c)
      lbank_[i][static_cast<size_t>(c)] = p(y_[static_cast<size_t>(i)], y_[static_cast<size_t>(i + 8)], c);

  // X: the coset pins c_{i+4} to c_i up to a decided offset, two per branch.
  Bank xbank;
  for (int w = 0; w < 8; ++w) {
    const uint32_t c = chan0_bits(cand_[static_cast<size_t>(w)]);
    for (int i = 0; i < 4; ++i) {
      const int ci = static_cast<int>((c >> i) & 1u);
      const int ci4 = static_cast<int>((c >> (i + 4)) & 1u);
      const uint32_t key = static_cast<uint32_t>((i << 2) | (ci << 1) | ci4);
      int idx = xbank.get_or_missing(key);
      if (idx < 0)
        idx = xbank.add(key, q(lbank_[i][static_cast<size_t>(ci)], lbank_[i + 4][static_cast<size_t>(ci4)]));
      xsel_[i][static_cast<size_t>(w)] = static_cast<uint8_t>(idx);
    }
  }
  if (xbank.n != 8) throw std::logic_error("Fast16K2: unexpected X bank size");
  for (int i = 0; i < 8; ++i) xv_[static_cast<size_t>(i)] = xbank.val[i];

  Bank ybank[2];
  for (int w = 0; w < 8; ++w) {
    for (int pb = 0; pb < 2; ++pb) {
      const uint32_t ka = xsel_[pb][static_cast<size_t>(w)];
      const uint32_t kb = xsel_[pb + 2][static_cast<size_t>(w)];
      const uint32_t key = (ka << 4) | kb;
      int idx = ybank[pb].get_or_missing(key);
      if (idx < 0) idx = ybank[pb].add(key, q(xv_[ka], xv_[kb]));
      ysel_[pb][static_cast<size_t>(w)] = static_cast<uint8_t>(idx);
    }
  }
  if (ybank[0].n != 4 || ybank[1].n != 4) throw std::logic_error("Fast16K2: unexpected Y bank size");
  for (int pb = 0; pb < 2; ++pb)
    for (int i = 0; i < ybank[pb].n; ++i) yv_[pb][static_cast<size_t>(i)] = ybank[pb].val[i];

  std::array<double, 8> z;
  for (int w = 0; w < 8; ++w) {
    z[static_cast<size_t>(w)] = q(yv_[0][ysel_[0][static_cast<size_t>(w)]], yv_[1][ysel_[1][static_cast<size_t>(w)]]);
    score_pair(r7p_[static_cast<size_t>(w)], z[static_cast<size_t>(w)], r8_[w][0], r8_[w][1]);
  }

  int kstar = 0;
  double habs = std::fabs(fht4_[0]);
  for (int k = 1; k < 4; ++k) {
    ++ops_.comparisons;
    if (std::fabs(fht4_[static_cast<size_t>(k)]) > habs) {
      habs = std::fabs(fht4_[static_cast<size_t>(k)]);
      kstar = k;
    }
  }
  const int v5 = (kstar >> 1) & 1, v6 = kstar & 1;
  const int v7 = (v5 ^ v6) ^ (fht4_[static_cast<size_t>(kstar)] < 0.0 ? 1 : 0);
  const int wstar = (v5 << 2) | (v6 << 1) | v7;
  const int bhat = z[static_cast<size_t>(wstar)] < 0.0 ? 1 : 0;
  m5_[bhat] = r7p_[static_cast<size_t>(wstar)];
  a5_[bhat] = wstar;
  double other[8];
  for (int w = 0; w < 8; ++w) other[w] = r8_[w][1 ^ bhat];
  m5_[1 ^ bhat] = max_scan(other, 8, &a5_[1 ^ bhat]);
  return final_diff(m5_[0], m5_[1]);
}

double Fast16K2::phase6() {
  // v9 = u6 ^ v6.
  const int u5 = u_[5];
  std::array<double, 8> z9;
  for (int w = 0; w < 8; ++w)
    z9[static_cast<size_t>(w)] =
        p(yv_[0][ysel_[0][static_cast<size_t>(w)]], yv_[1][ysel_[1][static_cast<size_t>(w)]], u5);
  for (int w = 0; w < 8; ++w) {
    double rv0, rv1;
    score_pair(r8_[w][u5], z9[static_cast<size_t>(w)], rv0, rv1);
    const int v6 = static_cast<int>((cand_[static_cast<size_t>(w)] >> 6) & 1u);
    r9_[w][v6] = rv0;
    r9_[w][v6 ^ 1] = rv1;
  }
  const int wstar = a5_[u5];
  const int v9s = z9[static_cast<size_t>(wstar)] < 0.0 ? 1 : 0;
  const int bhat = v9s ^ static_cast<int>((cand_[static_cast<size_t>(wstar)] >> 6) & 1u);
  m6_[bhat] = m5_[u5];
  a6_[bhat] = wstar;
  double other[8];
  for (int w = 0; w < 8; ++w) other[w] = r9_[w][1 ^ bhat];
  m6_[1 ^ bhat] = max_scan(other, 8, &a6_[1 ^ bhat]);
  return final_diff(m6_[0], m6_[1]);
}

double Fast16K2::phase7() {
  // v10 = u7 ^ v5 ^ v6; the max tree over R(v_0^10) serves phases 8..10.
  const int u6 = u_[6];
  std::array<double, 8> z10;
  for (int w = 0; w < 8; ++w) {
    const uint32_t m = cand_[static_cast<size_t>(w)];
    const int in40 = static_cast<int>(((m >> 8) ^ (m >> 9)) & 1u);
    const int in41 = static_cast<int>((m >> 9) & 1u);
    ybar_[0][w] = p(xv_[xsel_[0][static_cast<size_t>(w)]], xv_[xsel_[2][static_cast<size_t>(w)]], in40);
    ybar_[1][w] = p(xv_[xsel_[1][static_cast<size_t>(w)]], xv_[xsel_[3][static_cast<size_t>(w)]], in41);
    z10[static_cast<size_t>(w)] = q(ybar_[0][w], ybar_[1][w]);
  }
  for (int w = 0; w < 8; ++w) {
    double rv0, rv1;
    score_pair(r9_[w][u6], z10[static_cast<size_t>(w)], rv0, rv1);
    const uint32_t m = cand_[static_cast<size_t>(w)];
    const int s = static_cast<int>(((m >> 5) ^ (m >> 6)) & 1u);
    r10_[w][s] = rv0;
    r10_[w][s ^ 1] = rv1;
  }
  for (int w = 0; w < 8; ++w) {
    const uint32_t m = cand_[static_cast<size_t>(w)];
    const int v5 = static_cast<int>((m >> 5) & 1u);
    const int v6 = static_cast<int>((m >> 6) & 1u);
    const int v7 = static_cast<int>((m >> 7) & 1u);
    for (int b = 0; b < 2; ++b)
      leaf_[static_cast<size_t>((b << 3) | (v6 << 2) | (v5 << 1) | v7)] = r10_[w][b];
  }
  for (int i = 0; i < 8; ++i) t8_[static_cast<size_t>(i)] = max_scan(&leaf_[static_cast<size_t>(2 * i)], 2, nullptr);
  for (int i = 0; i < 4; ++i) t4_[static_cast<size_t>(i)] = max_scan(&t8_[static_cast<size_t>(2 * i)], 2, nullptr);
  for (int i = 0; i < 2; ++i) t2_[static_cast<size_t>(i)] = max_scan(&t4_[static_cast<size_t>(2 * i)], 2, nullptr);
  return final_diff(t2_[0], t2_[1]);
}

void Fast16K2::on_decide(int phi, int bit) {
  const uint32_t b = static_cast<uint32_t>(bit);
  switch (phi) {
    case 0:
    case 1:
    case 2:
    case 3:
    case 4:
      vmask_ |= b << phi;
      break;
    case 5:
      for (auto& m : cand_) m |= b << 8;
      break;
    case 6:
      for (auto& m : cand_) m |= (b ^ ((m >> 6) & 1u)) << 9;
      break;
    case 7:
      for (auto& m : cand_) m |= (b ^ ((m >> 5) & 1u) ^ ((m >> 6) & 1u)) << 10;
      break;
    case 10: {
      const int v6 = u_[8];
      const int v5 = u_[9] ^ u_[7] ^ u_[8];
      const int v7 = bit;
      win_ = (v5 << 2) | (v6 << 1) | v7;
      vmask_ = cand_[static_cast<size_t>(win_)];
      break;
    }
    case 11:
    case 12:
    case 13:
    case 14:
      vmask_ |= b << phi;
      break;
    default:
      break;
  }
}

}  // namespace polar16
