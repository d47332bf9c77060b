#pragma once

#include <vector>

#include "flasque/sheaf/mod_sheaf.hpp"
#include "flasque/sheaf/set_sheaf.hpp"

namespace flasque {

/// A subterminal subsheaf K of X restricted to `domain`: K is the section
/// `value` over the open `support` ⊆ domain, and empty outside it.
struct SubterminalPart {
  Open domain;
  Open support;
  Section value;

  bool contains(Point x, std::size_t s) const { return support.contains(x) && value[x] == s; }
  /// Restriction to a smaller open.
  SubterminalPart restricted(Open v) const;

  friend bool operator==(const SubterminalPart&, const SubterminalPart&) = default;
  friend auto operator<=>(const SubterminalPart& a, const SubterminalPart& b) {
    if (auto c = a.support <=> b.support; c != 0) return c;
    return a.value <=> b.value;
  }
};

/// All subterminal subsheaves of X|_U, the empty one first.
std::vector<SubterminalPart> enumerate_subterminals(const SetSheaf& x, Open u);
/// Module flavor, through the underlying set sheaf (finite stalks only).
std::vector<SubterminalPart> enumerate_subterminals(const ModSheaf& x, Open u);

/// P≤1(X): stalk at x is the list of parts over U_x; comps restrict parts.
struct SubterminalObject {
  SetSheaf sheaf;
  std::vector<std::vector<SubterminalPart>> parts;
  /// The singleton map X -> P≤1(X), s ↦ {s}.
  SetMorphism singleton;
};

SubterminalObject subterminal_object(const SetSheaf& x);

/// The generic subterminal K0 ⊆ X × P≤1(X): at x, the pairs (s, K) with s ∈ K.
struct GenericSubterminal {
  /// members[x] lists pairs (element of X_x, index of the part in P≤1(X)_x).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> members;
};

GenericSubterminal generic_subterminal(const SetSheaf& x, const SubterminalObject& p);

}  // namespace flasque
