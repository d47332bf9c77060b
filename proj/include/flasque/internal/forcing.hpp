#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flasque/internal/formula.hpp"
#include "flasque/sheaf/presheaf.hpp"
#include "flasque/sheaf/set_sheaf.hpp"
#include "flasque/site.hpp"

namespace flasque {

/// P≤1(X) as a presheaf together with the membership relation: member[c]
/// lists the pairs (x, K) with x ∈ K at stage c.
struct PowerObject {
  SetPresheaf object;
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> member;
};

/// P≤1 of a presheaf on a finite category: at c, the subterminal
/// subobjects of X restricted to the slice over c, given as a sieve on c
/// with a compatible family on it.
PowerObject power_le1(const SetPresheaf& x);

/// An interpretation of the nonlogical symbols: named objects and
/// relations, all presheaves on one finite category. Sheaves on a poset P
/// enter as presheaves on FinCategory::opposite_of(P).
class Structure {
 public:
  explicit Structure(CategoryPtr cat);
  /// Sheaf mode: stages are the points of p.
  explicit Structure(PosetPtr p);

  const FinCategory& category() const { return *cat_; }
  const CategoryPtr& category_ptr() const { return cat_; }
  bool sheaf_mode() const { return poset_ != nullptr; }

  void add_object(const std::string& name, SetPresheaf x);
  /// Sheaf mode only; P≤1 is then built from the subterminal parts of the sheaf.
  void add_object(const std::string& name, const SetSheaf& x);
  /// tuples[c] is the relation at stage c; checked to be a subpresheaf.
  void add_relation(const std::string& name, std::vector<std::string> sorts,
                    std::vector<std::set<std::vector<std::size_t>>> tuples);
  /// A truth value: the set of stages (bit c) where it holds, closed under arrows.
  void add_proposition(const std::string& name, std::uint64_t stages);

  bool has_object(const std::string& name) const { return objects_.count(name) != 0; }
  const SetPresheaf& object(const std::string& name) const;
  /// Built on first use.
  const PowerObject& power(const std::string& name) const;

  struct Relation {
    std::vector<std::string> sorts;
    std::vector<std::set<std::vector<std::size_t>>> tuples;
  };
  const Relation* relation(const std::string& name) const;

 private:
  CategoryPtr cat_;
  PosetPtr poset_;
  std::map<std::string, SetPresheaf> objects_;
  std::map<std::string, SetSheaf> sheaves_;
  std::map<std::string, Relation> relations_;
  mutable std::map<std::string, std::shared_ptr<PowerObject>> powers_;
};

/// Kripke–Joyal forcing for one formula over one structure. Stages are the
/// objects of the category; ∃ and ∨ are witnessed along covering families,
/// which for presheaves are the families containing a split epimorphism.
class Forcing {
 public:
  /// Type-checks the formula. Free variables must be declared in `free`.
  /// Throws InputError for unbound or rebound variables and sort or arity
  /// mismatches.
  Forcing(const Structure& s, FormulaPtr f, std::vector<std::pair<std::string, TypeExpr>> free = {});

  /// env lists values for the declared free variables, in order, as
  /// elements of their sorts at `stage`.
  bool force(Object stage, const std::vector<std::size_t>& env = {});
  /// Closed formulas only: forced at every stage.
  bool holds_globally();
  /// Stages where a closed formula is not forced.
  std::vector<Object> failing_stages();

  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct Node {
    Formula::Kind kind;
    std::vector<std::size_t> children;
    std::vector<std::size_t> args;  // slots
    std::size_t slot = 0;           // bound slot of a quantifier
    const SetPresheaf* sort = nullptr;
    const Structure::Relation* relation = nullptr;
    const PowerObject* power = nullptr;
    std::vector<std::size_t> free;  // free slots, sorted
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<std::size_t>& k) const;
  };

  std::size_t compile(const Formula& f, std::map<std::string, std::size_t>& scope, std::set<std::string>& used);
  bool eval(std::size_t node, Object c, std::vector<std::size_t>& env);
  bool eval_at(std::size_t node, Arrow f, std::vector<std::size_t>& env);

  const Structure& s_;
  std::vector<Node> nodes_;
  std::vector<const SetPresheaf*> slot_sort_;
  std::vector<TypeExpr> slot_types_;
  std::vector<std::size_t> free_slots_;
  std::size_t root_ = 0;
  std::vector<std::vector<Arrow>> covers_;
  std::unordered_map<std::vector<std::size_t>, bool, KeyHash> memo_;
};

}  // namespace flasque
