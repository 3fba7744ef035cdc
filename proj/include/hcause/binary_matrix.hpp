#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcause {

// Raised when matrix or parameter shapes do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense row-major 0/1 matrix. Holds X (N x T), Y (K x T) and Z (N x K).
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  // Builds from nested rows; every row must have the same length and
  // hold only 0 or 1.
  static BinaryMatrix from_rows(
      std::initializer_list<std::initializer_list<int>> rows);
  static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static BinaryMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  std::uint8_t operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::uint8_t at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool v) {
    data_[r * cols_ + c] = v ? 1 : 0;
  }

  std::span<const std::uint8_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const std::uint8_t> data() const { return data_; }

  std::size_t row_sum(std::size_t r) const;
  std::size_t col_sum(std::size_t c) const;
  std::vector<std::size_t> col_sums() const;
  std::size_t total() const;

  // Shape edits copy the buffer; K stays small so O(N*K) is fine.
  void append_zero_cols(std::size_t count);
  void append_zero_rows(std::size_t count);
  void erase_col(std::size_t c);
  void erase_row(std::size_t r);
  // Keeps only the columns whose flag is set, preserving order.
  void keep_cols(const std::vector<bool>& keep);
  void keep_rows(const std::vector<bool>& keep);

  BinaryMatrix transposed() const;
  BinaryMatrix col_range(std::size_t begin, std::size_t end) const;
  BinaryMatrix row_range(std::size_t begin, std::size_t end) const;

  // Integer product Z * Y (counts, not booleans).
  std::vector<int> times(const BinaryMatrix& other) const;
  // Z * Z^T as a dense N x N count matrix.
  std::vector<int> gram() const;

  std::vector<std::vector<int>> to_rows() const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

std::string to_string(const BinaryMatrix& m);

}  // namespace hcause
