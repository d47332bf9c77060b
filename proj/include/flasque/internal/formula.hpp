#pragma once

#include <memory>
#include <string>
#include <vector>

namespace flasque {

/// The sort of a bound variable: an object X of the structure, or the
/// object P≤1(X) of its subterminal parts.
struct TypeExpr {
  std::string object;
  bool power = false;

  std::string to_string() const { return power ? "(P1 " + object + ")" : object; }
  friend bool operator==(const TypeExpr&, const TypeExpr&) = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Bounded first-order formula. Quantifiers always carry a sort.
struct Formula {
  enum class Kind { True, False, Eq, In, Rel, And, Or, Imp, Not, Forall, Exists };

  Kind kind = Kind::True;
  /// Relation name (Rel), set name (In with a named subobject) or bound variable.
  std::string name;
  TypeExpr type;
  /// Variable arguments of atoms.
  std::vector<std::string> terms;
  std::vector<FormulaPtr> sub;
  /// Source position, 0 when built programmatically.
  int line = 0;
  int column = 0;

  static FormulaPtr truth();
  static FormulaPtr falsity();
  static FormulaPtr eq(std::string a, std::string b);
  /// a ∈ b, where b is a variable of sort (P1 X) or the name of a unary relation.
  static FormulaPtr in(std::string a, std::string b);
  static FormulaPtr rel(std::string name, std::vector<std::string> args = {});
  static FormulaPtr conj(std::vector<FormulaPtr> parts);
  static FormulaPtr disj(std::vector<FormulaPtr> parts);
  static FormulaPtr imp(FormulaPtr a, FormulaPtr b);
  static FormulaPtr neg(FormulaPtr a);
  static FormulaPtr forall(std::string var, TypeExpr type, FormulaPtr body);
  static FormulaPtr exists(std::string var, TypeExpr type, FormulaPtr body);
};

/// S-expression rendering, accepted back by parse_formula.
std::string to_sexpr(const Formula& f);

/// Parses one formula. Syntax:
///   true | false | NAME                      nullary relation
///   (eq a b) (in a K) (rel NAME a ...) (NAME a ...)
///   (and f ...) (or f ...) (imp f g) (not f)
///   (forall (v T) ... body) (exists (v T) ... body)   T = NAME | (P1 NAME)
/// `;` starts a comment. Errors are InputError with line and column.
FormulaPtr parse_formula(const std::string& text);

/// ∀K∈P≤1(X). ∃x∈X. ∀y∈X. (y ∈ K → y = x)
FormulaPtr flabby_formula(const std::string& object);

}  // namespace flasque
