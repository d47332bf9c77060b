#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flasque/sheaf/mod_sheaf.hpp"
#include "flasque/sheaf/presheaf.hpp"
#include "flasque/sheaf/set_sheaf.hpp"

namespace flasque {

/// Witness that a sheaf is not flabby: a section over `open` that does not
/// extend (to the whole space, or to open ∪ U_point when `point` is set).
struct Counterexample {
  Open open;
  /// Value of the section at each point of `open`, as labels or coordinate strings.
  std::vector<std::pair<Point, std::string>> section;
  std::optional<Point> point;

  std::string describe(const FinPoset& p) const;
};

struct FlabbyVerdict {
  bool flabby = true;
  std::optional<Counterexample> counterexample;

  explicit operator bool() const { return flabby; }
};

/// Every restriction F(X) -> F(U) is surjective.
FlabbyVerdict check_flabby_traditional(const SetSheaf& f);
FlabbyVerdict check_flabby_traditional(const ModSheaf& f);
/// Every section over U extends to U ∪ U_p for every point p (the covering
/// of X by minimal opens).
FlabbyVerdict check_flabby_local(const SetSheaf& f);
FlabbyVerdict check_flabby_local(const ModSheaf& f);
/// Every section over a subterminal of 1 extends to a global section. On a
/// poset this runs through the presheaf on the opposite category.
FlabbyVerdict check_strongly_flabby(const SetSheaf& f);
FlabbyVerdict check_strongly_flabby(const ModSheaf& f);

bool is_flabby_traditional(const SetSheaf& f);
bool is_flabby_traditional(const ModSheaf& f);
bool is_flabby_local(const SetSheaf& f);
bool is_flabby_local(const ModSheaf& f);
bool is_strongly_flabby(const SetSheaf& f);
bool is_strongly_flabby(const ModSheaf& f);

/// Strong flabbiness of a presheaf on a finite category. The counterexample
/// holds the subterminal (object mask) and the family.
struct PresheafFlabbyVerdict {
  bool flabby = true;
  std::uint64_t subterminal = 0;
  Family family;
};
PresheafFlabbyVerdict check_strongly_flabby(const SetPresheaf& f);
bool is_strongly_flabby(const SetPresheaf& f);

/// The preimage subsheaf U ↦ {u ∈ M(U) : p(u) = s|_U} of a global section s
/// of M'' under p : M -> M''. Flabbiness is decided by linear algebra: every
/// solution over U extends to a global solution.
FlabbyVerdict check_preimage_flabby(const ModMorphism& p, const IntVector& global_section_coords);

}  // namespace flasque
