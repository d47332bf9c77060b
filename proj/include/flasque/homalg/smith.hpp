#pragma once

#include <optional>
#include <vector>

#include "flasque/integer.hpp"

namespace flasque {

/// Smith normal form U·A·V = D with U, V unimodular and the diagonal of D
/// non-negative with d1 | d2 | ... . Uinv is the inverse of U.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix Uinv;
  std::size_t rank = 0;

  /// The nonzero diagonal entries d1 | d2 | ... | d_rank.
  IntVector diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// The nonzero invariant factors of A (no transforms tracked).
IntVector invariant_factors(const IntMatrix& a);

/// Lower column echelon form A·V = H. Column j < rank has its first nonzero
/// entry (positive) in row pivot_rows[j], strictly increasing in j; columns
/// from rank on are zero. Entries left of a pivot are reduced into [0, pivot).
struct ColumnEchelon {
  IntMatrix H;
  IntMatrix V;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

ColumnEchelon column_echelon(const IntMatrix& a);

/// Some integer x with A·x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);
std::optional<IntVector> solve_integer(const ColumnEchelon& e, const IntVector& b);

/// Columns form a basis of {x : A·x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

/// Columns form a basis of the lattice spanned by the columns of `gens`.
IntMatrix lattice_basis(const IntMatrix& gens);

}  // namespace flasque
