#include <bit>
#include <cmath>
#include <stdexcept>

#include "polar16/fast16.hpp"

namespace polar16 {

namespace {

std::shared_ptr<const WindowPlan> k1_plan() {
  static const auto plan = std::make_shared<const WindowPlan>(window_plan(k1()));
  return plan;
}

struct Bank {
  double val[32];
  uint32_t key[32];
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

Fast16K1::Fast16K1() : Fast16Base(k1_plan()) {}

std::unique_ptr<KernelProcessor> Fast16K1::clone() const {
  return std::make_unique<Fast16K1>(*this);
}

double Fast16K1::process_phase(int phi) {
  switch (phi) {
    case 0:
    case 1:
    case 2:
      return plain_llr(phi, vmask_);
    case 3:
      return phase3();
    case 4:
      return phase4();
    case 5:
      return phase5();
    case 6:
      return phase6();
    case 7:
      // u7 = v3; the phase-6 group maxima split exactly on (u6, v3).
      return final_diff(g6_[u_[6]][0], g6_[u_[6]][1]);
    case 8:
      return phase8();
    case 9: {  // u9 = v6
      const int base = u_[8] << 1;
      return final_diff(t4_[static_cast<size_t>(base | 0)], t4_[static_cast<size_t>(base | 1)]);
    }
    case 10: {  // u10 = v10 = u6 ^ v5 ^ v6
      const int off = u_[6] ^ u_[9];
      const int base = (u_[8] << 2) | (u_[9] << 1);
      return final_diff(t8_[static_cast<size_t>(base | off)], t8_[static_cast<size_t>(base | (1 ^ off))]);
    }
    case 11: {  // u11 = v7
      const int v5 = u_[10] ^ u_[6] ^ u_[9];
      const int base = (u_[8] << 3) | (u_[9] << 2) | (v5 << 1);
      return final_diff(t16_[static_cast<size_t>(base | 0)], t16_[static_cast<size_t>(base | 1)]);
    }
    case 12: {  // u12 = v11
      const int v5 = u_[10] ^ u_[6] ^ u_[9];
      const int base = (u_[8] << 4) | (u_[9] << 3) | (v5 << 2) | (u_[11] << 1);
      return final_diff(leaf_[static_cast<size_t>(base | 0)], leaf_[static_cast<size_t>(base | 1)]);
    }
    case 13:
      // Single path from here on; recover layer 3 at branch phase 6.
      s3_[0] = s36v_[s36sel_[0][static_cast<size_t>(win8_)]];
      s3_[1] = s36v_[s36sel_[1][static_cast<size_t>(win8_)]];
      return plain_llr(13, vmask_);
    case 14:
      for (int i = 0; i < 4; ++i)
        s2_[static_cast<size_t>(i)] = w2v_[w2sel_[i][static_cast<size_t>(win8_)]];
      return plain_llr(14, vmask_);
    case 15:
      return plain_llr(15, vmask_);
    default:
      throw std::logic_error("Fast16K1: bad phase");
  }
}

double Fast16K1::phase3() {
  // D_3 = {3}: hypothesis u3 = v4, window bit v3.
  const double s43 = plain_llr(3, vmask_);
  double r3[2];
  score_pair(0.0, s43, r3[0], r3[1]);
  double s44[2];
  for (int v3 = 0; v3 < 2; ++v3)
    s44[v3] = plain_llr(4, vmask_ | (static_cast<uint32_t>(v3) << 3));
  double r4[2][2];
  for (int v3 = 0; v3 < 2; ++v3) score_pair(r3[v3], s44[v3], r4[v3][0], r4[v3][1]);
  double m[2];
  for (int v4 = 0; v4 < 2; ++v4) {
    const double pair[2] = {r4[0][v4], r4[1][v4]};
    m[v4] = max_scan(pair, 2, nullptr);
  }
  return final_diff(m[0], m[1]);
}

double Fast16K1::phase4() {
  // Candidates w = (v3 v5 v6 v7); h_4 = 8, hypothesis u4 = v8.
  const uint32_t base = vmask_ & 0x17u;  // v0, v1, v2, v4
  for (int w = 0; w < 16; ++w) {
    const uint32_t v3 = static_cast<uint32_t>(w >> 3) & 1u;
    const uint32_t v5 = static_cast<uint32_t>(w >> 2) & 1u;
    const uint32_t v6 = static_cast<uint32_t>(w >> 1) & 1u;
    const uint32_t v7 = static_cast<uint32_t>(w) & 1u;
    cand_[static_cast<size_t>(w)] = base | (v3 << 3) | (v5 << 5) | (v6 << 6) | (v7 << 7);
  }

  // R(v_0^7) for the whole coset from one FHT of the sign-adjusted
  // S_1^{(0)} values (cached in s1_ since phase 0). The |s| part cancels
  // in the final difference and is dropped.
  const uint32_t c0 = chan0_bits(cand_[0]);
  std::array<double, 8> s;
  for (int i = 0; i < 8; ++i)
    s[static_cast<size_t>(i)] = ((c0 >> i) & 1u) ? -s1_[static_cast<size_t>(i)] : s1_[static_cast<size_t>(i)];
  fht_in_place(s.data(), 8);
  fht_ = s;
  for (int w = 0; w < 16; ++w) {
    const int k = (((w >> 3) & 1) << 2) | (((w >> 2) & 1) << 1) | ((w >> 1) & 1);
    const int g = std::popcount(static_cast<unsigned>(w)) & 1;
    r7_[static_cast<size_t>(w)] = 0.5 * (g ? -fht_[static_cast<size_t>(k)] : fht_[static_cast<size_t>(k)]);
  }

  // CSE arrays. L: both phase-1 values of every layer-1 branch.
  for (int i = 0; i < 8; ++i)
    for (int c = 0; c < 2; ++c)
      lbank_[i][static_cast<size_t>(c)] = p(y_[static_cast<size_t>(i)], y_[static_cast<size_t>(i + 8)], c);
  // X: all four (c_i, c_{i+4}) combinations per layer-2 branch.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      x_[i][j] = q(lbank_[i][static_cast<size_t>(j >> 1)], lbank_[i + 4][static_cast<size_t>(j & 1)]);
  // Y: the eight coset-reachable combinations per layer-3 branch.
  Bank ybank[2];
  for (int w = 0; w < 16; ++w) {
    const uint32_t c = chan0_bits(cand_[static_cast<size_t>(w)]);
    for (int pb = 0; pb < 2; ++pb) {
      const int ba = pb, bb = pb + 2;
      const int ja = static_cast<int>((((c >> ba) & 1u) << 1) | ((c >> (ba + 4)) & 1u));
      const int jb = static_cast<int>((((c >> bb) & 1u) << 1) | ((c >> (bb + 4)) & 1u));
      const uint32_t key = static_cast<uint32_t>(ja * 4 + jb);
      int idx = ybank[pb].get_or_missing(key);
      if (idx < 0) idx = ybank[pb].add(key, q(x_[ba][ja], x_[bb][jb]));
      ysel_[pb][static_cast<size_t>(w)] = static_cast<uint8_t>(idx);
    }
  }
  if (ybank[0].n != 8 || ybank[1].n != 8)
    throw std::logic_error("Fast16K1: unexpected Y bank size");
  for (int pb = 0; pb < 2; ++pb)
    for (int i = 0; i < 8; ++i) yv_[pb][static_cast<size_t>(i)] = ybank[pb].val[i];

  // Z = S_4^{(8)} per candidate, then fork scores on v8.
  std::array<double, 16> z;
  for (int w = 0; w < 16; ++w) {
    z[static_cast<size_t>(w)] = q(yv_[0][ysel_[0][static_cast<size_t>(w)]], yv_[1][ysel_[1][static_cast<size_t>(w)]]);
    score_pair(r7_[static_cast<size_t>(w)], z[static_cast<size_t>(w)], r8_[w][0], r8_[w][1]);
  }

  // The argmax of |fht| locates the best R(v_0^7); its zero-penalty v8
  // hypothesis inherits that maximum, only the other side is scanned.
  int kstar = 0;
  double habs = std::fabs(fht_[0]);
  for (int k = 1; k < 8; ++k) {
    ++ops_.comparisons;
    if (std::fabs(fht_[static_cast<size_t>(k)]) > habs) {
      habs = std::fabs(fht_[static_cast<size_t>(k)]);
      kstar = k;
    }
  }
  const int v3 = (kstar >> 2) & 1, v5 = (kstar >> 1) & 1, v6 = kstar & 1;
  const int v7 = (v3 ^ v5 ^ v6) ^ (fht_[static_cast<size_t>(kstar)] < 0.0 ? 1 : 0);
  const int wstar = (v3 << 3) | (v5 << 2) | (v6 << 1) | v7;
  const int bhat = z[static_cast<size_t>(wstar)] < 0.0 ? 1 : 0;
  m4_[bhat] = r7_[static_cast<size_t>(wstar)];
  a4_[bhat] = wstar;
  double other[16];
  for (int w = 0; w < 16; ++w) other[w] = r8_[w][1 ^ bhat];
  m4_[1 ^ bhat] = max_scan(other, 16, &a4_[1 ^ bhat]);
  return final_diff(m4_[0], m4_[1]);
}

double Fast16K1::phase5() {
  // h grows to 9 with v9 = u5 ^ v6; windows unchanged.
  const int u4 = u_[4];
  std::array<double, 16> z9;
  for (int w = 0; w < 16; ++w)
    z9[static_cast<size_t>(w)] =
        p(yv_[0][ysel_[0][static_cast<size_t>(w)]], yv_[1][ysel_[1][static_cast<size_t>(w)]], u4);
  for (int w = 0; w < 16; ++w) {
    double rv0, rv1;
    score_pair(r8_[w][u4], z9[static_cast<size_t>(w)], rv0, rv1);
    const int v6 = static_cast<int>((cand_[static_cast<size_t>(w)] >> 6) & 1u);
    r9_[w][v6] = rv0;      // v9 = 0 -> u5 = v6
    r9_[w][v6 ^ 1] = rv1;  // v9 = 1 -> u5 = v6 ^ 1
  }
  const int wstar = a4_[u4];
  const int v9s = z9[static_cast<size_t>(wstar)] < 0.0 ? 1 : 0;
  const int bhat = v9s ^ static_cast<int>((cand_[static_cast<size_t>(wstar)] >> 6) & 1u);
  m5_[bhat] = m4_[u4];
  a5_[bhat] = wstar;
  double other[16];
  for (int w = 0; w < 16; ++w) other[w] = r9_[w][1 ^ bhat];
  m5_[1 ^ bhat] = max_scan(other, 16, &a5_[1 ^ bhat]);
  return final_diff(m5_[0], m5_[1]);
}

double Fast16K1::phase6() {
  // v10 = u6 ^ v5 ^ v6; group maxima on (u6, v3) feed phase 7 for free.
  const int u5 = u_[5];
  std::array<double, 16> z10;
  for (int w = 0; w < 16; ++w) {
    const uint32_t m = cand_[static_cast<size_t>(w)];
    const int in40 = static_cast<int>(((m >> 8) ^ (m >> 9)) & 1u);
    const int in41 = static_cast<int>((m >> 9) & 1u);
    const uint32_t c = chan0_bits(m);
    const int j0 = static_cast<int>((((c >> 0) & 1u) << 1) | ((c >> 4) & 1u));
    const int j2 = static_cast<int>((((c >> 2) & 1u) << 1) | ((c >> 6) & 1u));
    const int j1 = static_cast<int>((((c >> 1) & 1u) << 1) | ((c >> 5) & 1u));
    const int j3 = static_cast<int>((((c >> 3) & 1u) << 1) | ((c >> 7) & 1u));
    ybar_[0][w] = p(x_[0][j0], x_[2][j2], in40);
    ybar_[1][w] = p(x_[1][j1], x_[3][j3], in41);
    z10[static_cast<size_t>(w)] = q(ybar_[0][w], ybar_[1][w]);
  }
  for (int w = 0; w < 16; ++w) {
    double rv0, rv1;
    score_pair(r9_[w][u5], z10[static_cast<size_t>(w)], rv0, rv1);
    const uint32_t m = cand_[static_cast<size_t>(w)];
    const int s = static_cast<int>(((m >> 5) ^ (m >> 6)) & 1u);
    r10_[w][s] = rv0;      // v10 = 0 -> u6 = v5 ^ v6
    r10_[w][s ^ 1] = rv1;
  }
  for (int b = 0; b < 2; ++b)
    for (int v3 = 0; v3 < 2; ++v3) {
      double grp[8];
      int n = 0;
      for (int w = 0; w < 16; ++w)
        if (((w >> 3) & 1) == v3) grp[n++] = r10_[w][b];
      g6_[b][v3] = max_scan(grp, 8, nullptr);
    }
  double m6[2];
  for (int b = 0; b < 2; ++b) {
    const double pair[2] = {g6_[b][0], g6_[b][1]};
    m6[b] = max_scan(pair, 2, nullptr);
  }
  return final_diff(m6[0], m6[1]);
}

double Fast16K1::phase8() {
  // Window becomes {5,6,7,11}, h_8 = 12, hypothesis u8 = v12.
  const int u6 = u_[6], u7 = u_[7];
  int n8 = 0;
  int parent[16];
  for (int w = 0; w < 16; ++w) {
    if (((w >> 3) & 1) != u7) continue;  // v3 resolved by u7
    for (int v11 = 0; v11 < 2; ++v11) {
      cand8_[static_cast<size_t>(n8)] = cand_[static_cast<size_t>(w)] | (static_cast<uint32_t>(v11) << 11);
      parent[n8] = w;
      ++n8;
    }
  }
  if (n8 != 16) throw std::logic_error("Fast16K1: unexpected survivor count");

  // R(v_0^11): one P and one score fork per surviving v_0^10 path.
  double r11[16];
  for (int k8 = 0; k8 < 16; k8 += 2) {
    const int w = parent[k8];
    const uint32_t m = cand_[static_cast<size_t>(w)];
    const int v10 = static_cast<int>((m >> 10) & 1u);
    const double z11 = p(ybar_[0][w], ybar_[1][w], v10);
    score_pair(r10_[w][u6], z11, r11[k8], r11[k8 + 1]);  // indexed by v11
  }

  // S_2^{(3)} (16 distinct), S_3^{(6)} (32), S_4^{(12)} and scores.
  Bank w2bank;
  for (int k8 = 0; k8 < 16; ++k8) {
    const uint32_t m = cand8_[static_cast<size_t>(k8)];
    const uint32_t c = chan0_bits(m);
    for (int i = 0; i < 4; ++i) {
      const int ci = static_cast<int>((c >> i) & 1u);
      const int ci4 = static_cast<int>((c >> (i + 4)) & 1u);
      const int in2 = input_bit(2, i, 2, m);
      const uint32_t key = static_cast<uint32_t>((i << 3) | (ci << 2) | (ci4 << 1) | in2);
      int idx = w2bank.get_or_missing(key);
      if (idx < 0)
        idx = w2bank.add(key, p(lbank_[i][static_cast<size_t>(ci)], lbank_[i + 4][static_cast<size_t>(ci4)], in2));
      w2sel_[i][static_cast<size_t>(k8)] = static_cast<uint8_t>(idx);
    }
  }
  if (w2bank.n != 16) throw std::logic_error("Fast16K1: unexpected S2 bank size");
  for (int i = 0; i < 16; ++i) w2v_[static_cast<size_t>(i)] = w2bank.val[i];

  Bank s36bank;
  for (int k8 = 0; k8 < 16; ++k8) {
    for (int pb = 0; pb < 2; ++pb) {
      const uint32_t ka = w2sel_[pb][static_cast<size_t>(k8)];
      const uint32_t kb = w2sel_[pb + 2][static_cast<size_t>(k8)];
      const uint32_t key = (static_cast<uint32_t>(pb) << 8) | (ka << 4) | kb;
      int idx = s36bank.get_or_missing(key);
      if (idx < 0) idx = s36bank.add(key, q(w2v_[ka], w2v_[kb]));
      s36sel_[pb][static_cast<size_t>(k8)] = static_cast<uint8_t>(idx);
    }
  }
  if (s36bank.n != 32) throw std::logic_error("Fast16K1: unexpected S3 bank size");
  for (int i = 0; i < 32; ++i) s36v_[static_cast<size_t>(i)] = s36bank.val[i];

  for (int k8 = 0; k8 < 16; ++k8) {
    const double z12 = q(s36v_[s36sel_[0][static_cast<size_t>(k8)]], s36v_[s36sel_[1][static_cast<size_t>(k8)]]);
    score_pair(r11[k8], z12, r12_[k8][0], r12_[k8][1]);  // v12 = u8
  }

  // Full max tree keyed (u8 v6 v5 v7 v11); phases 9..12 read it directly.
  for (int k8 = 0; k8 < 16; ++k8) {
    const uint32_t m = cand8_[static_cast<size_t>(k8)];
    const int v5 = static_cast<int>((m >> 5) & 1u);
    const int v6 = static_cast<int>((m >> 6) & 1u);
    const int v7 = static_cast<int>((m >> 7) & 1u);
    const int v11 = static_cast<int>((m >> 11) & 1u);
    for (int b = 0; b < 2; ++b)
      leaf_[static_cast<size_t>((b << 4) | (v6 << 3) | (v5 << 2) | (v7 << 1) | v11)] = r12_[k8][b];
  }
  for (int i = 0; i < 16; ++i) t16_[static_cast<size_t>(i)] = max_scan(&leaf_[static_cast<size_t>(2 * i)], 2, nullptr);
  for (int i = 0; i < 8; ++i) t8_[static_cast<size_t>(i)] = max_scan(&t16_[static_cast<size_t>(2 * i)], 2, nullptr);
  for (int i = 0; i < 4; ++i) t4_[static_cast<size_t>(i)] = max_scan(&t8_[static_cast<size_t>(2 * i)], 2, nullptr);
  for (int i = 0; i < 2; ++i) t2_[static_cast<size_t>(i)] = max_scan(&t4_[static_cast<size_t>(2 * i)], 2, nullptr);
  return final_diff(t2_[0], t2_[1]);
}

void Fast16K1::on_decide(int phi, int bit) {
  const uint32_t b = static_cast<uint32_t>(bit);
  switch (phi) {
    case 0:
    case 1:
    case 2:
      vmask_ |= b << phi;
      break;
    case 3:
      vmask_ |= b << 4;
      break;
    case 4:
      for (auto& m : cand_) m |= b << 8;
      break;
    case 5:
      for (auto& m : cand_) m |= (b ^ ((m >> 6) & 1u)) << 9;
      break;
    case 6:
      for (auto& m : cand_) m |= (b ^ ((m >> 5) & 1u) ^ ((m >> 6) & 1u)) << 10;
      break;
    case 12: {
      // All window bits are now pinned; recover the surviving candidate.
      const uint32_t v6 = u_[9];
      const uint32_t v5 = static_cast<uint32_t>(u_[10] ^ u_[6] ^ u_[9]);
      const uint32_t v7 = u_[11];
      const uint32_t v11 = b;
      win8_ = -1;
      for (int k8 = 0; k8 < 16; ++k8) {
        const uint32_t m = cand8_[static_cast<size_t>(k8)];
        if (((m >> 5) & 1u) == v5 && ((m >> 6) & 1u) == v6 && ((m >> 7) & 1u) == v7 &&
            ((m >> 11) & 1u) == v11) {
          win8_ = k8;
          break;
        }
      }
      if (win8_ < 0) throw std::logic_error("Fast16K1: no surviving candidate");
      vmask_ = cand8_[static_cast<size_t>(win8_)] | (static_cast<uint32_t>(u_[8]) << 12);
      break;
    }
    case 13:
    case 14:
      vmask_ |= b << phi;
      break;
    default:
      break;
  }
}

}  // namespace polar16
