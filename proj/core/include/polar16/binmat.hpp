/*
Dense GF(2) matrices: products, Kronecker powers, inversion and the
minimum-span reduction used to derive kernel processing constraints.
*/
#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polar16 {

// Row-major bit-packed binary matrix. Rows span multiple 64-bit words so the
// same type can hold a 16x16 kernel and the explicit 256x256 transform used
// as an encoder oracle.
class BinMatrix {
 public:
  BinMatrix() = default;
  BinMatrix(int rows, int cols);

  static BinMatrix identity(int n);
  static BinMatrix from_rows(std::initializer_list<std::string_view> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int get(int r, int c) const {
    return static_cast<int>((bits_[static_cast<size_t>(r) * wpr_ + c / 64] >> (c % 64)) & 1u);
  }
  void set(int r, int c, int v);

  void xor_rows(int dst, int src);
  void swap_rows(int a, int b);
  bool row_is_zero(int r) const;
  int row_weight(int r) const;
  int leading(int r) const;   // column of first nonzero entry, -1 for a zero row
  int trailing(int r) const;  // column of last nonzero entry, -1 for a zero row

  // Low word of a row; valid whenever cols <= 64 (all kernel-sized matrices).
  uint64_t row_word(int r) const { return bits_[static_cast<size_t>(r) * wpr_]; }

  bool operator==(const BinMatrix&) const = default;

  std::string to_string() const;  // '0'/'1' rows separated by '\n'

 private:
  friend BinMatrix multiply(const BinMatrix&, const BinMatrix&);
  friend std::vector<uint8_t> vec_mat_mul(std::span<const uint8_t>, const BinMatrix&);

  int rows_ = 0;
  int cols_ = 0;
  int wpr_ = 0;  // words per row
  std::vector<uint64_t> bits_;
};

// GF(2) matrix product. Throws std::invalid_argument on a.cols != b.rows.
BinMatrix multiply(const BinMatrix& a, const BinMatrix& b);

BinMatrix kron(const BinMatrix& a, const BinMatrix& b);

// t-fold Kronecker power, kron_power(a, 0) == I1.
BinMatrix kron_power(const BinMatrix& a, int t);

// Inverse over GF(2). Throws std::invalid_argument("singular matrix") when none exists.
BinMatrix invert(const BinMatrix& a);

// Reduces an l x 2l full-row-rank matrix by elementary row operations until
// row i leads in column i and the trailing columns z_i are all distinct.
// A matrix with distinct leading and trailing columns is span-minimal, so the
// (lead, trail) pairing is unique. Throws on rank deficiency.
BinMatrix min_span_form(const BinMatrix& theta_prime);

// Permutation of [l^m] reversing base-l digits: sum t_i l^i -> sum t_{m-1-i} l^i.
std::vector<int> digit_reversal_perm(int l, int m);

// Permutation matrix M with (u M)_i = u_{rev(i)}.
BinMatrix digit_reversal_matrix(int l, int m);

BinMatrix transpose(const BinMatrix& a);
BinMatrix reverse_columns(const BinMatrix& a);
BinMatrix hconcat(const BinMatrix& a, const BinMatrix& b);

// Row vector times matrix: c_j = sum_i u_i a[i][j].
std::vector<uint8_t> vec_mat_mul(std::span<const uint8_t> u, const BinMatrix& a);

// Parses the plain-text kernel format: l lines of l characters '0'/'1'.
BinMatrix parse_bin_matrix(std::string_view text);

}  // namespace polar16
