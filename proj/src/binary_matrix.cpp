#include "hcause/binary_matrix.hpp"

#include <sstream>

namespace hcause {

namespace {

template <typename Rows>
BinaryMatrix build(const Rows& rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : std::size(*rows.begin());
  BinaryMatrix out(n, m);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (std::size(row) != m) throw DimensionError("ragged rows in BinaryMatrix");
    std::size_t c = 0;
    for (int v : row) {
      if (v != 0 && v != 1) throw std::invalid_argument("BinaryMatrix entries must be 0 or 1");
      out.set(r, c++, v == 1);
    }
    ++r;
  }
  return out;
}

}  // namespace

BinaryMatrix BinaryMatrix::from_rows(
    std::initializer_list<std::initializer_list<int>> rows) {
  return build(rows);
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  return build(rows);
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
  BinaryMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, i, true);
  return out;
}

std::uint8_t BinaryMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("BinaryMatrix index out of range");
  return (*this)(r, c);
}

std::size_t BinaryMatrix::row_sum(std::size_t r) const {
  std::size_t s = 0;
  for (auto v : row(r)) s += v;
  return s;
}

std::size_t BinaryMatrix::col_sum(std::size_t c) const {
  std::size_t s = 0;
  for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, c);
  return s;
}

std::vector<std::size_t> BinaryMatrix::col_sums() const {
  std::vector<std::size_t> s(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) s[c] += (*this)(r, c);
  return s;
}

std::size_t BinaryMatrix::total() const {
  std::size_t s = 0;
  for (auto v : data_) s += v;
  return s;
}

void BinaryMatrix::append_zero_cols(std::size_t count) {
  if (count == 0) return;
  const std::size_t nc = cols_ + count;
  std::vector<std::uint8_t> next(rows_ * nc, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) next[r * nc + c] = (*this)(r, c);
  data_ = std::move(next);
  cols_ = nc;
}

void BinaryMatrix::append_zero_rows(std::size_t count) {
  rows_ += count;
  data_.resize(rows_ * cols_, 0);
}

void BinaryMatrix::keep_cols(const std::vector<bool>& keep) {
  if (keep.size() != cols_) throw DimensionError("keep_cols mask size mismatch");
  std::size_t nc = 0;
  for (bool k : keep) nc += k;
  std::vector<std::uint8_t> next;
  next.reserve(rows_ * nc);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (keep[c]) next.push_back((*this)(r, c));
  data_ = std::move(next);
  cols_ = nc;
}

void BinaryMatrix::keep_rows(const std::vector<bool>& keep) {
  if (keep.size() != rows_) throw DimensionError("keep_rows mask size mismatch");
  std::vector<std::uint8_t> next;
  std::size_t nr = 0;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (!keep[r]) continue;
    auto src = row(r);
    next.insert(next.end(), src.begin(), src.end());
    ++nr;
  }
  data_ = std::move(next);
  rows_ = nr;
}

void BinaryMatrix::erase_col(std::size_t c) {
  std::vector<bool> keep(cols_, true);
  keep.at(c) = false;
  keep_cols(keep);
}

void BinaryMatrix::erase_row(std::size_t r) {
  std::vector<bool> keep(rows_, true);
  keep.at(r) = false;
  keep_rows(keep);
}

BinaryMatrix BinaryMatrix::transposed() const {
  BinaryMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.set(c, r, (*this)(r, c));
  return out;
}

BinaryMatrix BinaryMatrix::col_range(std::size_t begin, std::size_t end) const {
  if (begin > end || end > cols_) throw DimensionError("col_range out of bounds");
  BinaryMatrix out(rows_, end - begin);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = begin; c < end; ++c) out.set(r, c - begin, (*this)(r, c));
  return out;
}

BinaryMatrix BinaryMatrix::row_range(std::size_t begin, std::size_t end) const {
  if (begin > end || end > rows_) throw DimensionError("row_range out of bounds");
  BinaryMatrix out(end - begin, cols_);
  for (std::size_t r = begin; r < end; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.set(r - begin, c, (*this)(r, c));
  return out;
}

std::vector<int> BinaryMatrix::times(const BinaryMatrix& other) const {
  if (cols_ != other.rows_) throw DimensionError("inner dimensions differ in product");
  const std::size_t m = other.cols_;
  std::vector<int> out(rows_ * m, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!(*this)(r, k)) continue;
      for (std::size_t c = 0; c < m; ++c) out[r * m + c] += other(k, c);
    }
  return out;
}

std::vector<int> BinaryMatrix::gram() const {
  std::vector<int> out(rows_ * rows_, 0);
  for (std::size_t a = 0; a < rows_; ++a)
    for (std::size_t b = a; b < rows_; ++b) {
      int s = 0;
      for (std::size_t k = 0; k < cols_; ++k) s += (*this)(a, k) & (*this)(b, k);
      out[a * rows_ + b] = s;
      out[b * rows_ + a] = s;
    }
  return out;
}

std::vector<std::vector<int>> BinaryMatrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
  return out;
}

std::string to_string(const BinaryMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << int(m(r, c));
    os << '\n';
  }
  return os.str();
}

}  // namespace hcause
