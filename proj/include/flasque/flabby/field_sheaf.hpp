#pragma once

#include <map>
#include <string>
#include <vector>

#include "flasque/homalg/fp.hpp"
#include "flasque/sheaf/mod_sheaf.hpp"
#include "flasque/site.hpp"

namespace flasque {

/// A sheaf of finite-dimensional F_p vector spaces: a representation of
/// the poset with stalk dimensions and matrices on Hasse edges.
class FieldSheaf {
 public:
  FieldSheaf() = default;
  /// Throws InputError if composites along different paths disagree.
  FieldSheaf(PosetPtr site, fp::Elem p, std::vector<std::size_t> dims,
             std::map<std::pair<Point, Point>, fp::Matrix> edges);

  const FinPoset& site() const { return *site_; }
  const PosetPtr& site_ptr() const { return site_; }
  fp::Elem prime() const { return p_; }
  std::size_t dim(Point x) const { return dims_.at(x); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const fp::Matrix& comp(Point x, Point y) const { return comps_.at(x * site_->size() + y); }
  const std::map<std::pair<Point, Point>, fp::Matrix>& edges() const { return edges_; }

  /// Dimensions and edge matrices flattened, for hashing and ordering.
  std::vector<fp::Elem> key() const;

 private:
  PosetPtr site_;
  fp::Elem p_ = 2;
  std::vector<std::size_t> dims_;
  std::map<std::pair<Point, Point>, fp::Matrix> edges_;
  std::vector<fp::Matrix> comps_;
};

/// Requires a prime field ring; stalks are replaced by free modules.
FieldSheaf to_field_sheaf(const ModSheaf& f);
ModSheaf to_mod_sheaf(const FieldSheaf& f);

/// Constant k on the open u, zero elsewhere.
FieldSheaf field_indicator(const PosetPtr& p, fp::Elem prime, Open u);

/// Basis of Hom(A|_U, B|_U): each column is a flattened family of matrices
/// (point by point in increasing order over U, each row-major dim_B × dim_A).
fp::Matrix hom_basis(const FieldSheaf& a, const FieldSheaf& b, Open u);
/// Flattening offsets used by hom_basis.
std::vector<std::size_t> hom_offsets(const FieldSheaf& a, const FieldSheaf& b, Open u);

/// A subsheaf of B: per-point basis matrices (columns span the subspace),
/// with the induced sheaf A and the inclusion A -> B.
struct FieldSubsheaf {
  FieldSheaf sheaf;
  std::vector<fp::Matrix> inclusion;
};

/// All subsheaves of B (all compatible tuples of subspaces).
std::vector<FieldSubsheaf> all_subsheaves(const FieldSheaf& b);

/// B/A with the projection B -> B/A. Q_x has kernel A_x; the comparison
/// maps are Q_y B(x, y) R_x for a right inverse R_x of Q_x.
struct FieldQuotient {
  FieldSheaf sheaf;
  std::vector<fp::Matrix> projection;
};
FieldQuotient field_quotient(const FieldSheaf& b, const FieldSubsheaf& a);

/// 0 -> A -> B -> B/A -> 0 as module sheaves over Z/p.
ShortExact field_short_exact(const FieldSheaf& b, const FieldSubsheaf& a);

/// Is precomposition Hom(B|_U, I|_U) -> Hom(A|_U, I|_U) surjective?
bool restriction_surjective(const FieldSubsheaf& a, const FieldSheaf& b, const FieldSheaf& i, Open u);
/// Same, reusing a precomputed hom_basis(b, i, u).
bool restriction_surjective(const FieldSubsheaf& a, const FieldSheaf& b, const FieldSheaf& i, Open u,
                            const fp::Matrix& hom_b);

/// All representations with stalk dimension <= max_dim (labeled, not up to iso).
std::vector<FieldSheaf> all_field_sheaves(const PosetPtr& p, fp::Elem prime, std::size_t max_dim);
/// One representative per isomorphism class, found by orbit search under
/// the product of general linear groups.
std::vector<FieldSheaf> field_sheaves_up_to_iso(const PosetPtr& p, fp::Elem prime, std::size_t max_dim);

/// All subspaces of F_p^n, each as a matrix whose columns are a basis in
/// reduced echelon form.
std::vector<fp::Matrix> all_subspaces(std::size_t n, fp::Elem p);

}  // namespace flasque
