#include "flasque/homalg/smith.hpp"

#include <utility>

namespace flasque {

namespace {

using boost::multiprecision::abs;

struct Tracker {
  IntMatrix* u = nullptr;
  IntMatrix* uinv = nullptr;
  IntMatrix* v = nullptr;
};

void swap_rows(IntMatrix& d, Tracker& t, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < d.cols(); ++c) std::swap(d(i, c), d(j, c));
  if (t.u) {
    for (std::size_t c = 0; c < t.u->cols(); ++c) std::swap((*t.u)(i, c), (*t.u)(j, c));
    for (std::size_t r = 0; r < t.uinv->rows(); ++r) std::swap((*t.uinv)(r, i), (*t.uinv)(r, j));
  }
}

void swap_cols(IntMatrix& d, Tracker& t, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < d.rows(); ++r) std::swap(d(r, i), d(r, j));
  if (t.v) {
    for (std::size_t r = 0; r < t.v->rows(); ++r) std::swap((*t.v)(r, i), (*t.v)(r, j));
  }
}

// row_i += q * row_t
void add_row(IntMatrix& d, Tracker& t, std::size_t i, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < d.cols(); ++c) {
    if (d(src, c) != 0) d(i, c) += q * d(src, c);
  }
  if (t.u) {
    for (std::size_t c = 0; c < t.u->cols(); ++c) {
      if ((*t.u)(src, c) != 0) (*t.u)(i, c) += q * (*t.u)(src, c);
    }
    for (std::size_t r = 0; r < t.uinv->rows(); ++r) {
      if ((*t.uinv)(r, i) != 0) (*t.uinv)(r, src) -= q * (*t.uinv)(r, i);
    }
  }
}

// col_i += q * col_src
void add_col(IntMatrix& d, Tracker& t, std::size_t i, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < d.rows(); ++r) {
    if (d(r, src) != 0) d(r, i) += q * d(r, src);
  }
  if (t.v) {
    for (std::size_t r = 0; r < t.v->rows(); ++r) {
      if ((*t.v)(r, src) != 0) (*t.v)(r, i) += q * (*t.v)(r, src);
    }
  }
}

void negate_row(IntMatrix& d, Tracker& t, std::size_t i) {
  for (std::size_t c = 0; c < d.cols(); ++c) d(i, c) = -d(i, c);
  if (t.u) {
    for (std::size_t c = 0; c < t.u->cols(); ++c) (*t.u)(i, c) = -(*t.u)(i, c);
    for (std::size_t r = 0; r < t.uinv->rows(); ++r) (*t.uinv)(r, i) = -(*t.uinv)(r, i);
  }
}

void smith_in_place(IntMatrix& d, Tracker& t, std::size_t& rank) {
  const std::size_t m = d.rows();
  const std::size_t n = d.cols();
  std::size_t k = 0;
  while (k < m && k < n) {
    // Smallest nonzero entry of the trailing block goes to (k, k).
    std::size_t pr = m, pc = n;
    for (std::size_t i = k; i < m; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        if (d(i, j) != 0 && (pr == m || abs(d(i, j)) < abs(d(pr, pc)))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == m) break;
    swap_rows(d, t, k, pr);
    swap_cols(d, t, k, pc);
    for (;;) {
      bool clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (d(i, k) == 0) continue;
        add_row(d, t, i, k, -floor_div(d(i, k), d(k, k)));
        if (d(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (d(k, j) == 0) continue;
        add_col(d, t, j, k, -floor_div(d(k, j), d(k, k)));
        if (d(k, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t br = k, bc = k;
        for (std::size_t i = k + 1; i < m; ++i) {
          if (d(i, k) != 0 && abs(d(i, k)) < abs(d(br, bc))) br = i, bc = k;
        }
        for (std::size_t j = k + 1; j < n; ++j) {
          if (d(k, j) != 0 && abs(d(k, j)) < abs(d(br, bc))) br = k, bc = j;
        }
        swap_rows(d, t, k, br);
        swap_cols(d, t, k, bc);
        continue;
      }
      // Divisibility: pull an offending row into row k and redo.
      std::size_t bad = m;
      for (std::size_t i = k + 1; i < m && bad == m; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          if (d(i, j) % d(k, k) != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == m) break;
      add_row(d, t, k, bad, 1);
    }
    if (d(k, k) < 0) negate_row(d, t, k);
    ++k;
  }
  rank = k;
}

}  // namespace

IntVector SmithForm::diagonal() const {
  IntVector out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm s;
  s.D = a;
  s.U = IntMatrix::identity(a.rows());
  s.Uinv = IntMatrix::identity(a.rows());
  s.V = IntMatrix::identity(a.cols());
  Tracker t{&s.U, &s.Uinv, &s.V};
  smith_in_place(s.D, t, s.rank);
  return s;
}

IntVector invariant_factors(const IntMatrix& a) {
  IntMatrix d = a;
  Tracker t;
  std::size_t rank = 0;
  smith_in_place(d, t, rank);
  IntVector out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(d(i, i));
  return out;
}

ColumnEchelon column_echelon(const IntMatrix& a) {
  ColumnEchelon e;
  e.H = a;
  e.V = IntMatrix::identity(a.cols());
  Tracker t{nullptr, nullptr, &e.V};
  IntMatrix& h = e.H;
  const std::size_t n = a.cols();
  std::size_t k = 0;
  for (std::size_t r = 0; r < a.rows() && k < n; ++r) {
    // Euclid across row r, columns k.., until one nonzero remains.
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = k; j < n; ++j) {
        if (h(r, j) != 0 && (best == n || abs(h(r, j)) < abs(h(r, best)))) best = j;
      }
      if (best == n) break;
      swap_cols(h, t, k, best);
      bool single = true;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (h(r, j) == 0) continue;
        add_col(h, t, j, k, -floor_div(h(r, j), h(r, k)));
        if (h(r, j) != 0) single = false;
      }
      if (single) break;
    }
    if (k == n || h(r, k) == 0) continue;
    if (h(r, k) < 0) {
      for (std::size_t i = 0; i < h.rows(); ++i) h(i, k) = -h(i, k);
      for (std::size_t i = 0; i < e.V.rows(); ++i) e.V(i, k) = -e.V(i, k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      add_col(h, t, j, k, -floor_div(h(r, j), h(r, k)));
    }
    e.pivot_rows.push_back(r);
    ++k;
  }
  e.rank = k;
  return e;
}

std::optional<IntVector> solve_integer(const ColumnEchelon& e, const IntVector& b) {
  const IntMatrix& h = e.H;
  IntVector y(h.cols());
  for (std::size_t j = 0; j < e.rank; ++j) {
    const std::size_t r = e.pivot_rows[j];
    Integer acc = b[r];
    for (std::size_t i = 0; i < j; ++i) acc -= h(r, i) * y[i];
    if (acc % h(r, j) != 0) return std::nullopt;
    y[j] = acc / h(r, j);
  }
  if (h * y != b) return std::nullopt;
  return e.V * y;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  return solve_integer(column_echelon(a), b);
}

IntMatrix kernel_basis(const IntMatrix& a) {
  ColumnEchelon e = column_echelon(a);
  return e.V.column_block(e.rank, a.cols() - e.rank);
}

IntMatrix lattice_basis(const IntMatrix& gens) {
  ColumnEchelon e = column_echelon(gens);
  return e.H.column_block(0, e.rank);
}

}  // namespace flasque
