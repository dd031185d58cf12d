#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coxcss {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  static BitVector from_support(std::size_t n, const std::vector<std::size_t>& support);

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v = true) {
    if (v) w_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t weight() const;
  bool is_zero() const;
  std::vector<std::size_t> support() const;
  /// Index of the lowest set bit, or size() when zero.
  std::size_t lowest() const;

  std::vector<std::uint64_t>& words() { return w_; }
  const std::vector<std::uint64_t>& words() const { return w_; }

  BitVector& operator^=(const BitVector& o);
  bool operator==(const BitVector& o) const = default;
  bool operator<(const BitVector& o) const { return w_ < o.w_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Dense GF(2) matrix, rows packed into 64-bit words. Optional row and column
/// labels travel with the matrix through selection and stacking.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix from_rows(std::size_t cols, const std::vector<std::vector<std::size_t>>& supports);
  /// Rows given as strings of '0'/'1' (spaces ignored).
  static BitMatrix from_strings(const std::vector<std::string>& rows);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t r, std::size_t c) const { return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1; }
  void set(std::size_t r, std::size_t c, bool v = true);
  void flip(std::size_t r, std::size_t c) { data_[r * wpr_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63); }

  const std::uint64_t* row_data(std::size_t r) const { return data_.data() + r * wpr_; }
  std::uint64_t* row_data(std::size_t r) { return data_.data() + r * wpr_; }

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  void append_row(const BitVector& v, const std::string& label = {});
  std::size_t row_weight(std::size_t r) const;
  std::vector<std::size_t> row_support(std::size_t r) const;
  std::size_t col_weight(std::size_t c) const;
  std::size_t count_ones() const;
  bool is_zero() const;

  BitMatrix transpose() const;
  BitMatrix select_rows(const std::vector<std::size_t>& idx) const;
  BitMatrix select_cols(const std::vector<std::size_t>& idx) const;
  /// Appends zero columns on the right.
  void add_cols(std::size_t extra);

  bool same_entries(const BitMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator==(const BitMatrix& o) const { return same_entries(o); }

  std::string to_string() const;

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> data_;
};

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
BitMatrix hstack(const BitMatrix& a, const BitMatrix& b);
BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);
BitMatrix block_diagonal(const BitMatrix& a, const BitMatrix& b);

std::size_t rank_gf2(const BitMatrix& m);
/// Rows of the result form a basis of {v : m v = 0}.
BitMatrix kernel_basis(const BitMatrix& m);

/// Incremental echelon basis for row-space membership and reduction.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols) : cols_(cols) {}
  explicit RowReducer(const BitMatrix& m);

  /// Residual of v modulo the current span.
  BitVector reduce(BitVector v) const;
  bool contains(const BitVector& v) const { return reduce(v).is_zero(); }
  /// Adds v; returns true when v was independent of the current span.
  bool add(const BitVector& v);
  std::size_t rank() const { return basis_.size(); }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t cols_;
  std::vector<BitVector> basis_;
  std::vector<std::size_t> pivots_;
};

bool in_row_space(const BitMatrix& m, const BitVector& v);

}  // namespace coxcss
