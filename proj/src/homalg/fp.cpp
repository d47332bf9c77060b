#include "flasque/homalg/fp.hpp"

#include <stdexcept>

namespace flasque::fp {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_int(const IntMatrix& m, Elem p) {
  Matrix out(m.rows(), m.cols());
  const Integer pp = p;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = static_cast<Elem>(mod_floor(m(r, c), pp));
  }
  return out;
}

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, const Vec& v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::column_block(std::size_t first, std::size_t count) const {
  Matrix out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  }
  return out;
}

IntMatrix Matrix::to_int() const {
  IntMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
  }
  return out;
}

Elem inverse(Elem a, Elem p) {
  Elem t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    Elem q = r / nr;
    Elem tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("element not invertible mod p");
  return ((t % p) + p) % p;
}

bool is_prime(const Integer& m) {
  if (m < 2) return false;
  for (Integer d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

Matrix multiply(const Matrix& a, const Matrix& b, Elem p) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Elem x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = (out(i, j) + x * b(k, j)) % p;
    }
  }
  return out;
}

Vec multiply(const Matrix& a, const Vec& v, Elem p) {
  Vec out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Elem acc = 0;
    for (std::size_t k = 0; k < a.cols(); ++k) acc = (acc + a(i, k) * v[k]) % p;
    out[i] = acc;
  }
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  const std::size_t cols = a.rows() ? a.cols() : b.cols();
  Matrix out(a.rows() + b.rows(), cols);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = a(r, c);
  }
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(a.rows() + r, c) = b(r, c);
  }
  return out;
}

namespace {

// Reduces `a` in place; if `t` is given, applies the same row operations to it.
std::vector<std::size_t> reduce(Matrix& a, Matrix* t, Elem p) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
      if (t) {
        for (std::size_t j = 0; j < t->cols(); ++j) std::swap((*t)(piv, j), (*t)(row, j));
      }
    }
    Elem inv = inverse(a(row, c), p);
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) = a(row, j) * inv % p;
    if (t) {
      for (std::size_t j = 0; j < t->cols(); ++j) (*t)(row, j) = (*t)(row, j) * inv % p;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, c) == 0) continue;
      Elem f = p - a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = (a(i, j) + f * a(row, j)) % p;
      if (t) {
        for (std::size_t j = 0; j < t->cols(); ++j) (*t)(i, j) = ((*t)(i, j) + f * (*t)(row, j)) % p;
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

Rref rref(Matrix a, Elem p) {
  Rref out;
  out.pivots = reduce(a, nullptr, p);
  out.R = std::move(a);
  return out;
}

std::size_t rank(const Matrix& a, Elem p) { return rref(a, p).pivots.size(); }

Solver::Solver(const Matrix& a, Elem p) : p_(p), n_(a.cols()), t_(Matrix::identity(a.rows())), r_(a) {
  pivots_ = reduce(r_, &t_, p);
}

std::optional<Vec> Solver::solve(const Vec& b) const {
  Vec tb = multiply(t_, b, p_);
  for (std::size_t i = pivots_.size(); i < tb.size(); ++i) {
    if (tb[i] != 0) return std::nullopt;
  }
  Vec x(n_, 0);
  for (std::size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = tb[i];
  return x;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b, Elem p) { return Solver(a, p).solve(b); }

Matrix kernel(const Matrix& a, Elem p) {
  Rref rr = rref(a, p);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : rr.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (!is_pivot[c]) free.push_back(c);
  }
  Matrix k(a.cols(), free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    k(free[j], j) = 1;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
      k(rr.pivots[i], j) = (p - rr.R(i, free[j])) % p;
    }
  }
  return k;
}

std::vector<std::size_t> independent_columns(const Matrix& a, Elem p) { return rref(a, p).pivots; }

}  // namespace flasque::fp
