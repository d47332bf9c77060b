#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flasque/integer.hpp"

namespace flasque::fp {

/// Linear algebra over a prime field F_p with machine integers. Entries are
/// kept in [0, p).
using Elem = std::int64_t;
using Vec = std::vector<Elem>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_int(const IntMatrix& m, Elem p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  void set_column(std::size_t c, const Vec& v);
  Matrix column_block(std::size_t first, std::size_t count) const;
  IntMatrix to_int() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> a_;
};

Elem inverse(Elem a, Elem p);
bool is_prime(const Integer& m);

Matrix multiply(const Matrix& a, const Matrix& b, Elem p);
Vec multiply(const Matrix& a, const Vec& v, Elem p);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

/// Reduced row echelon form, with pivot column per nonzero row.
struct Rref {
  Matrix R;
  std::vector<std::size_t> pivots;
};
Rref rref(Matrix a, Elem p);
std::size_t rank(const Matrix& a, Elem p);

/// Some x with A·x = b.
std::optional<Vec> solve(const Matrix& a, const Vec& b, Elem p);
/// Columns form a basis of the null space of A.
Matrix kernel(const Matrix& a, Elem p);
/// Indices of a maximal linearly independent subset of the columns (greedy from the left).
std::vector<std::size_t> independent_columns(const Matrix& a, Elem p);

/// Incremental solver for A·x = b with fixed A and many right-hand sides.
class Solver {
 public:
  Solver(const Matrix& a, Elem p);
  std::optional<Vec> solve(const Vec& b) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  Elem p_;
  std::size_t n_;
  Matrix t_;  // row operations applied to A, so that t_·A = reduced form
  Matrix r_;
  std::vector<std::size_t> pivots_;
};

}  // namespace flasque::fp
