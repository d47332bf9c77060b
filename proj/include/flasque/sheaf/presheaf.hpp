#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flasque/sheaf/set_sheaf.hpp"
#include "flasque/site.hpp"

namespace flasque {

/// A presheaf of finite sets on a finite category: F(c) = {0..size(c)-1}
/// and, for each arrow a : d -> c, the action F(a) : F(c) -> F(d).
class SetPresheaf {
 public:
  SetPresheaf() = default;
  /// Checks F(id) = id and F(g o f) = F(f) o F(g).
  SetPresheaf(CategoryPtr c, std::vector<std::size_t> sizes, std::vector<SetMap> action,
              std::vector<std::vector<std::string>> labels = {});

  const FinCategory& category() const { return *cat_; }
  const CategoryPtr& category_ptr() const { return cat_; }
  std::size_t size(Object c) const { return sizes_.at(c); }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  /// F(a)(s) for s in F(dst a).
  std::size_t act(Arrow a, std::size_t s) const { return action_[a][s]; }
  const SetMap& action(Arrow a) const { return action_.at(a); }
  const std::string& label(Object c, std::size_t s) const { return labels_.at(c).at(s); }
  const std::vector<std::vector<std::string>>& labels() const { return labels_; }

 private:
  CategoryPtr cat_;
  std::vector<std::size_t> sizes_;
  std::vector<SetMap> action_;
  std::vector<std::vector<std::string>> labels_;
};

/// A family over a set of objects: value per object, kUndefined outside.
using Family = std::vector<std::size_t>;

SetPresheaf terminal_presheaf(const CategoryPtr& c);
/// The regular right action of a one-object category (a group) on its arrows.
SetPresheaf regular_representation(const CategoryPtr& c);
/// A sheaf on P viewed as a presheaf on FinCategory::opposite_of(P).
SetPresheaf to_presheaf(const SetSheaf& f, const CategoryPtr& opposite);

/// Subterminals of 1: object sets S with d in S whenever some d -> c has c in S.
/// Sorted by size, then mask.
std::vector<std::uint64_t> subterminals_of_one(const FinCategory& c);

/// Compatible families over the objects in `s` (sieve-closed), sorted.
std::vector<Family> families(const SetPresheaf& f, std::uint64_t s);
std::vector<Family> presheaf_global_sections(const SetPresheaf& f);

}  // namespace flasque
