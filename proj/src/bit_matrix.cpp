#include "coxcss/bit_matrix.hpp"

#include "coxcss/error.hpp"

#include <algorithm>
#include <bit>

namespace coxcss {

// ---------------------------------------------------------------- BitVector

BitVector BitVector::from_support(std::size_t n, const std::vector<std::size_t>& support) {
  BitVector v(n);
  for (std::size_t i : support) {
    if (i >= n) throw Error(ErrorKind::InvalidInput, "support index out of range");
    v.set(i);
  }
  return v;
}

std::size_t BitVector::weight() const {
  std::size_t w = 0;
  for (auto x : w_) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

bool BitVector::is_zero() const {
  return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    std::uint64_t x = w_[k];
    while (x) {
      out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

std::size_t BitVector::lowest() const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w_[k]));
  return n_;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.n_ != n_) throw Error(ErrorKind::InvalidInput, "bit vector length mismatch");
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  return *this;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

BitMatrix BitMatrix::from_rows(std::size_t cols, const std::vector<std::vector<std::size_t>>& supports) {
  BitMatrix m(supports.size(), cols);
  for (std::size_t r = 0; r < supports.size(); ++r)
    for (std::size_t c : supports[r]) {
      if (c >= cols) throw Error(ErrorKind::InvalidInput, "column index out of range");
      m.set(r, c);
    }
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  std::vector<std::string> clean;
  for (const auto& s : rows) {
    std::string t;
    for (char ch : s)
      if (ch == '0' || ch == '1') t.push_back(ch);
    clean.push_back(t);
  }
  const std::size_t cols = clean.empty() ? 0 : clean[0].size();
  BitMatrix m(clean.size(), cols);
  for (std::size_t r = 0; r < clean.size(); ++r) {
    if (clean[r].size() != cols) throw Error(ErrorKind::InvalidInput, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      if (clean[r][c] == '1') m.set(r, c);
  }
  return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  auto& w = data_[r * wpr_ + (c >> 6)];
  if (v) w |= std::uint64_t{1} << (c & 63);
  else w &= ~(std::uint64_t{1} << (c & 63));
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  std::copy(row_data(r), row_data(r) + wpr_, v.words().begin());
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  if (v.size() != cols_) throw Error(ErrorKind::InvalidInput, "row length mismatch");
  std::copy(v.words().begin(), v.words().end(), row_data(r));
}

void BitMatrix::append_row(const BitVector& v, const std::string& label) {
  if (v.size() != cols_) throw Error(ErrorKind::InvalidInput, "row length mismatch");
  if (!row_labels.empty() || (!label.empty() && rows_ == 0)) row_labels.push_back(label);
  else if (!label.empty()) {
    row_labels.assign(rows_, {});
    row_labels.push_back(label);
  }
  data_.insert(data_.end(), v.words().begin(), v.words().end());
  ++rows_;
}

std::size_t BitMatrix::row_weight(std::size_t r) const {
  std::size_t w = 0;
  for (std::size_t k = 0; k < wpr_; ++k) w += static_cast<std::size_t>(std::popcount(row_data(r)[k]));
  return w;
}

std::vector<std::size_t> BitMatrix::row_support(std::size_t r) const { return row(r).support(); }

std::size_t BitMatrix::col_weight(std::size_t c) const {
  std::size_t w = 0;
  for (std::size_t r = 0; r < rows_; ++r) w += get(r, c);
  return w;
}

std::size_t BitMatrix::count_ones() const {
  std::size_t w = 0;
  for (auto x : data_) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

bool BitMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t x) { return x == 0; });
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::uint64_t* d = row_data(r);
    for (std::size_t k = 0; k < wpr_; ++k) {
      std::uint64_t x = d[k];
      while (x) {
        t.set(k * 64 + static_cast<std::size_t>(std::countr_zero(x)), r);
        x &= x - 1;
      }
    }
  }
  t.row_labels = col_labels;
  t.col_labels = row_labels;
  return t;
}

BitMatrix BitMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  BitMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= rows_) throw Error(ErrorKind::InvalidInput, "row index out of range");
    std::copy(row_data(idx[i]), row_data(idx[i]) + wpr_, m.row_data(i));
  }
  if (!row_labels.empty())
    for (std::size_t i : idx) m.row_labels.push_back(row_labels[i]);
  m.col_labels = col_labels;
  return m;
}

BitMatrix BitMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  BitMatrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (get(r, idx[j])) m.set(r, j);
  if (!col_labels.empty())
    for (std::size_t j : idx) m.col_labels.push_back(col_labels[j]);
  m.row_labels = row_labels;
  return m;
}

void BitMatrix::add_cols(std::size_t extra) {
  BitMatrix m(rows_, cols_ + extra);
  for (std::size_t r = 0; r < rows_; ++r) std::copy(row_data(r), row_data(r) + wpr_, m.row_data(r));
  m.row_labels = std::move(row_labels);
  m.col_labels = std::move(col_labels);
  if (!m.col_labels.empty()) m.col_labels.resize(cols_ + extra);
  *this = std::move(m);
}

std::string BitMatrix::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidInput, "matrix product shape mismatch");
  BitMatrix out(a.rows(), b.cols());
  const std::size_t wb = b.words_per_row();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint64_t* o = out.row_data(r);
    const std::uint64_t* ar = a.row_data(r);
    for (std::size_t k = 0; k < a.words_per_row(); ++k) {
      std::uint64_t x = ar[k];
      while (x) {
        const std::size_t j = k * 64 + static_cast<std::size_t>(std::countr_zero(x));
        const std::uint64_t* br = b.row_data(j);
        for (std::size_t t = 0; t < wb; ++t) o[t] ^= br[t];
        x &= x - 1;
      }
    }
  }
  return out;
}

BitMatrix hstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::InvalidInput, "hstack row mismatch");
  BitMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a.get(r, c)) m.set(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c)
      if (b.get(r, c)) m.set(r, a.cols() + c);
  }
  m.row_labels = a.row_labels;
  if (!a.col_labels.empty() && !b.col_labels.empty()) {
    m.col_labels = a.col_labels;
    m.col_labels.insert(m.col_labels.end(), b.col_labels.begin(), b.col_labels.end());
  }
  return m;
}

BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::InvalidInput, "vstack column mismatch");
  BitMatrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) std::copy(a.row_data(r), a.row_data(r) + a.words_per_row(), m.row_data(r));
  for (std::size_t r = 0; r < b.rows(); ++r)
    std::copy(b.row_data(r), b.row_data(r) + b.words_per_row(), m.row_data(a.rows() + r));
  m.col_labels = a.col_labels;
  if (!a.row_labels.empty() && !b.row_labels.empty()) {
    m.row_labels = a.row_labels;
    m.row_labels.insert(m.row_labels.end(), b.row_labels.begin(), b.row_labels.end());
  }
  return m;
}

BitMatrix block_diagonal(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a.get(r, c)) m.set(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c)
      if (b.get(r, c)) m.set(a.rows() + r, a.cols() + c);
  if (!a.row_labels.empty() && !b.row_labels.empty()) {
    m.row_labels = a.row_labels;
    m.row_labels.insert(m.row_labels.end(), b.row_labels.begin(), b.row_labels.end());
  }
  if (!a.col_labels.empty() && !b.col_labels.empty()) {
    m.col_labels = a.col_labels;
    m.col_labels.insert(m.col_labels.end(), b.col_labels.begin(), b.col_labels.end());
  }
  return m;
}

std::size_t rank_gf2(const BitMatrix& m) {
  const std::size_t wpr = m.words_per_row();
  std::vector<std::uint64_t> d(m.rows() * wpr);
  for (std::size_t r = 0; r < m.rows(); ++r) std::copy(m.row_data(r), m.row_data(r) + wpr, d.begin() + r * wpr);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    const std::size_t k = c >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    std::size_t piv = rank;
    while (piv < m.rows() && !(d[piv * wpr + k] & bit)) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank)
      std::swap_ranges(d.begin() + piv * wpr + k, d.begin() + (piv + 1) * wpr, d.begin() + rank * wpr + k);
    const std::uint64_t* p = d.data() + rank * wpr;
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      std::uint64_t* q = d.data() + r * wpr;
      if (q[k] & bit)
        for (std::size_t t = k; t < wpr; ++t) q[t] ^= p[t];
    }
    ++rank;
  }
  return rank;
}

BitMatrix kernel_basis(const BitMatrix& m) {
  const std::size_t wpr = m.words_per_row();
  std::vector<std::uint64_t> d(m.rows() * wpr);
  for (std::size_t r = 0; r < m.rows(); ++r) std::copy(m.row_data(r), m.row_data(r) + wpr, d.begin() + r * wpr);
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(m.cols(), false);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    const std::size_t k = c >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    std::size_t piv = rank;
    while (piv < m.rows() && !(d[piv * wpr + k] & bit)) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank) std::swap_ranges(d.begin() + piv * wpr, d.begin() + (piv + 1) * wpr, d.begin() + rank * wpr);
    const std::uint64_t* p = d.data() + rank * wpr;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank) continue;
      std::uint64_t* q = d.data() + r * wpr;
      if (q[k] & bit)
        for (std::size_t t = k; t < wpr; ++t) q[t] ^= p[t];
    }
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++rank;
  }
  BitMatrix out(m.cols() - rank, m.cols());
  std::size_t row = 0;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    out.set(row, f);
    const std::size_t k = f >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (f & 63);
    for (std::size_t r = 0; r < rank; ++r)
      if (d[r * wpr + k] & bit) out.set(row, pivot_col[r]);
    ++row;
  }
  out.col_labels = m.col_labels;
  return out;
}

RowReducer::RowReducer(const BitMatrix& m) : cols_(m.cols()) {
  for (std::size_t r = 0; r < m.rows(); ++r) add(m.row(r));
}

BitVector RowReducer::reduce(BitVector v) const {
  if (v.size() != cols_) throw Error(ErrorKind::InvalidInput, "reducer length mismatch");
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (v.get(pivots_[i])) v ^= basis_[i];
  return v;
}

bool RowReducer::add(const BitVector& v) {
  BitVector r = reduce(v);
  const std::size_t p = r.lowest();
  if (p == cols_) return false;
  basis_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

bool in_row_space(const BitMatrix& m, const BitVector& v) { return RowReducer(m).contains(v); }

}  // namespace coxcss
