#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace flasque {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

/// Floor division and the matching non-negative remainder (b != 0).
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);

/// Dense integer matrix, row-major. Maps act on column vectors.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  void set_column(std::size_t c, const IntVector& v);

  IntMatrix transposed() const;
  /// Columns [first, first + count).
  IntMatrix column_block(std::size_t first, std::size_t count) const;
  IntMatrix row_block(std::size_t first, std::size_t count) const;
  /// Places `block` with its top-left corner at (r, c).
  void paste(std::size_t r, std::size_t c, const IntMatrix& block);

  bool is_zero() const;
  void reduce_mod(const Integer& m);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& v);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator+(const IntVector& a, const IntVector& b);

/// [a | b]
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
/// [a ; b]
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
/// Block diagonal matrix.
IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);

/// Determinant by fraction-free elimination.
Integer determinant(const IntMatrix& a);

bool is_zero(const IntVector& v);
std::string to_string(const IntMatrix& m);
std::string to_string(const IntVector& v);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

}  // namespace flasque
