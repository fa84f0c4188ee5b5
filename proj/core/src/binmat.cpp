#include "polar16/binmat.hpp"

#include <bit>
#include <stdexcept>

namespace polar16 {

BinMatrix::BinMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("BinMatrix: rows, cols must be >= 1");
  wpr_ = (cols + 63) / 64;
  bits_.assign(static_cast<size_t>(rows) * wpr_, 0);
}

BinMatrix BinMatrix::identity(int n) {
  BinMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

BinMatrix BinMatrix::from_rows(std::initializer_list<std::string_view> rows) {
  const int r = static_cast<int>(rows.size());
  if (r == 0) throw std::invalid_argument("BinMatrix: empty row list");
  const int c = static_cast<int>(rows.begin()->size());
  BinMatrix m(r, c);
  int i = 0;
  for (auto row : rows) {
    if (static_cast<int>(row.size()) != c)
      throw std::invalid_argument("BinMatrix: ragged row list");
    for (int j = 0; j < c; ++j) {
      if (row[j] != '0' && row[j] != '1')
        throw std::invalid_argument("BinMatrix: entries must be '0' or '1'");
      m.set(i, j, row[j] - '0');
    }
    ++i;
  }
  return m;
}

void BinMatrix::set(int r, int c, int v) {
  uint64_t& w = bits_[static_cast<size_t>(r) * wpr_ + c / 64];
  const uint64_t mask = uint64_t{1} << (c % 64);
  if (v & 1)
    w |= mask;
  else
    w &= ~mask;
}

void BinMatrix::xor_rows(int dst, int src) {
  uint64_t* d = &bits_[static_cast<size_t>(dst) * wpr_];
  const uint64_t* s = &bits_[static_cast<size_t>(src) * wpr_];
  for (int w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void BinMatrix::swap_rows(int a, int b) {
  if (a == b) return;
  uint64_t* pa = &bits_[static_cast<size_t>(a) * wpr_];
  uint64_t* pb = &bits_[static_cast<size_t>(b) * wpr_];
  for (int w = 0; w < wpr_; ++w) std::swap(pa[w], pb[w]);
}

bool BinMatrix::row_is_zero(int r) const {
  const uint64_t* p = &bits_[static_cast<size_t>(r) * wpr_];
  for (int w = 0; w < wpr_; ++w)
    if (p[w]) return false;
  return true;
}

int BinMatrix::row_weight(int r) const {
  const uint64_t* p = &bits_[static_cast<size_t>(r) * wpr_];
  int n = 0;
  for (int w = 0; w < wpr_; ++w) n += std::popcount(p[w]);
  return n;
}

int BinMatrix::leading(int r) const {
  const uint64_t* p = &bits_[static_cast<size_t>(r) * wpr_];
  for (int w = 0; w < wpr_; ++w)
    if (p[w]) return w * 64 + std::countr_zero(p[w]);
  return -1;
}

int BinMatrix::trailing(int r) const {
  const uint64_t* p = &bits_[static_cast<size_t>(r) * wpr_];
  for (int w = wpr_ - 1; w >= 0; --w)
    if (p[w]) return w * 64 + 63 - std::countl_zero(p[w]);
  return -1;
}

std::string BinMatrix::to_string() const {
  std::string s;
  s.reserve(static_cast<size_t>(rows_) * (cols_ + 1));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) s += static_cast<char>('0' + get(r, c));
    if (r + 1 < rows_) s += '\n';
  }
  return s;
}

BinMatrix multiply(const BinMatrix& a, const BinMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  BinMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    uint64_t* dst = &out.bits_[static_cast<size_t>(r) * out.wpr_];
    for (int c = 0; c < a.cols(); ++c) {
      if (!a.get(r, c)) continue;
      const uint64_t* src = &b.bits_[static_cast<size_t>(c) * b.wpr_];
      for (int w = 0; w < out.wpr_; ++w) dst[w] ^= src[w];
    }
  }
  return out;
}

BinMatrix kron(const BinMatrix& a, const BinMatrix& b) {
  BinMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ra = 0; ra < a.rows(); ++ra)
    for (int ca = 0; ca < a.cols(); ++ca) {
      if (!a.get(ra, ca)) continue;
      for (int rb = 0; rb < b.rows(); ++rb)
        for (int cb = 0; cb < b.cols(); ++cb)
          if (b.get(rb, cb)) out.set(ra * b.rows() + rb, ca * b.cols() + cb, 1);
    }
  return out;
}

BinMatrix kron_power(const BinMatrix& a, int t) {
  if (t < 0) throw std::invalid_argument("kron_power: t must be >= 0");
  BinMatrix out = BinMatrix::identity(1);
  for (int i = 0; i < t; ++i) out = kron(out, a);
  return out;
}

BinMatrix invert(const BinMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("invert: matrix not square");
  const int n = a.rows();
  BinMatrix work = a;
  BinMatrix inv = BinMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (work.get(r, col)) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::invalid_argument("invert: singular matrix");
    work.swap_rows(col, pivot);
    inv.swap_rows(col, pivot);
    for (int r = 0; r < n; ++r) {
      if (r != col && work.get(r, col)) {
        work.xor_rows(r, col);
        inv.xor_rows(r, col);
      }
    }
  }
  return inv;
}

BinMatrix min_span_form(const BinMatrix& theta_prime) {
  const int l = theta_prime.rows();
  if (theta_prime.cols() < l) throw std::invalid_argument("min_span_form: too few columns");
  BinMatrix m = theta_prime;

  // Gauss-Jordan on the first l columns: row i ends up leading in column i.
  for (int col = 0; col < l; ++col) {
    int pivot = -1;
    for (int r = col; r < l; ++r)
      if (m.get(r, col)) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::invalid_argument("min_span_form: rank deficiency");
    m.swap_rows(col, pivot);
    for (int r = 0; r < l; ++r)
      if (r != col && m.get(r, col)) m.xor_rows(r, col);
  }

  // Make trailing columns distinct. Adding the row with the larger leading
  // index into the one with the smaller keeps every lead in place and
  // strictly shrinks the receiver's trail, so the loop terminates.
  for (;;) {
    bool changed = false;
    for (int i = 0; i < l && !changed; ++i) {
      const int zi = m.trailing(i);
      for (int j = i + 1; j < l; ++j) {
        if (m.trailing(j) == zi) {
          m.xor_rows(i, j);
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }
  return m;
}

std::vector<int> digit_reversal_perm(int l, int m) {
  if (l < 2 || m < 1) throw std::invalid_argument("digit_reversal_perm: need l >= 2, m >= 1");
  int n = 1;
  for (int i = 0; i < m; ++i) n *= l;
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    int x = i, rev = 0;
    for (int d = 0; d < m; ++d) {
      rev = rev * l + x % l;
      x /= l;
    }
    perm[static_cast<size_t>(i)] = rev;
  }
  return perm;
}

BinMatrix digit_reversal_matrix(int l, int m) {
  const auto perm = digit_reversal_perm(l, m);
  const int n = static_cast<int>(perm.size());
  BinMatrix out(n, n);
  // (u M)_i = u_{rev(i)} requires M[rev(i)][i] = 1.
  for (int i = 0; i < n; ++i) out.set(perm[static_cast<size_t>(i)], i, 1);
  return out;
}

BinMatrix transpose(const BinMatrix& a) {
  BinMatrix out(a.cols(), a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (a.get(r, c)) out.set(c, r, 1);
  return out;
}

BinMatrix reverse_columns(const BinMatrix& a) {
  BinMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (a.get(r, c)) out.set(r, a.cols() - 1 - c, 1);
  return out;
}

BinMatrix hconcat(const BinMatrix& a, const BinMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row count mismatch");
  BinMatrix out(a.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c)
      if (a.get(r, c)) out.set(r, c, 1);
    for (int c = 0; c < b.cols(); ++c)
      if (b.get(r, c)) out.set(r, a.cols() + c, 1);
  }
  return out;
}

std::vector<uint8_t> vec_mat_mul(std::span<const uint8_t> u, const BinMatrix& a) {
  if (static_cast<int>(u.size()) != a.rows())
    throw std::invalid_argument("vec_mat_mul: dimension mismatch");
  std::vector<uint64_t> acc(static_cast<size_t>(a.wpr_), 0);
  for (int i = 0; i < a.rows(); ++i) {
    if (!(u[static_cast<size_t>(i)] & 1)) continue;
    const uint64_t* src = &a.bits_[static_cast<size_t>(i) * a.wpr_];
    for (int w = 0; w < a.wpr_; ++w) acc[static_cast<size_t>(w)] ^= src[w];
  }
  std::vector<uint8_t> out(static_cast<size_t>(a.cols()));
  for (int c = 0; c < a.cols(); ++c)
    out[static_cast<size_t>(c)] = static_cast<uint8_t>((acc[static_cast<size_t>(c / 64)] >> (c % 64)) & 1u);
  return out;
}

BinMatrix parse_bin_matrix(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    pos = nl + 1;
  }
  if (lines.empty()) throw std::invalid_argument("parse_bin_matrix: no rows");
  const int cols = static_cast<int>(lines[0].size());
  BinMatrix m(static_cast<int>(lines.size()), cols);
  for (int r = 0; r < static_cast<int>(lines.size()); ++r) {
    if (static_cast<int>(lines[static_cast<size_t>(r)].size()) != cols)
      throw std::invalid_argument("parse_bin_matrix: ragged rows");
    for (int c = 0; c < cols; ++c) {
      const char ch = lines[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (ch != '0' && ch != '1') throw std::invalid_argument("parse_bin_matrix: bad character");
      m.set(r, c, ch - '0');
    }
  }
  return m;
}

}  // namespace polar16
