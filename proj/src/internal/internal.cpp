#include "flasque/internal/internal.hpp"

#include "flasque/errors.hpp"

namespace flasque {

bool holds_globally(const Structure& s, const FormulaPtr& f) { return Forcing(s, f).holds_globally(); }

std::vector<Point> internal_flabby_failures(const SetSheaf& x) {
  Structure s(x.site_ptr());
  s.add_object("X", x);
  return Forcing(s, flabby_formula("X")).failing_stages();
}

bool internal_flabby(const SetSheaf& x) { return internal_flabby_failures(x).empty(); }

bool internal_flabby(const ModSheaf& x) {
  if (!x.has_finite_stalks()) throw UnsupportedError("internal flabbiness needs finite stalks");
  return internal_flabby(underlying_set_sheaf(x));
}

bool internal_flabby(const SetPresheaf& x) {
  Structure s(x.category_ptr());
  s.add_object("X", x);
  return holds_globally(s, flabby_formula("X"));
}

std::vector<FormulaPtr> ipc_schedule() {
  static const char* const kSchedule[] = {
      "(imp p p)",
      "(imp p (imp q p))",
      "(imp (imp p (imp q r)) (imp (imp p q) (imp p r)))",
      "(imp (and p q) p)",
      "(imp (and p q) q)",
      "(imp p (imp q (and p q)))",
      "(imp p (or p q))",
      "(imp q (or p q))",
      "(imp (imp p r) (imp (imp q r) (imp (or p q) r)))",
      "(imp false p)",
      "(imp (imp p q) (imp (imp p (not q)) (not p)))",
      "(imp p (not (not p)))",
      "(imp (not (not (not p))) (not p))",
      "(not (and p (not p)))",
      "(not (not (or p (not p))))",
      "(imp (or (not p) (not q)) (not (and p q)))",
      "(imp (not (or p q)) (and (not p) (not q)))",
      "(imp (imp p q) (imp (not q) (not p)))",
      "(forall (x X) (y X) (imp (eq x y) (eq y x)))",
      "(imp (exists (x X) (and p (eq x x))) p)",
  };
  std::vector<FormulaPtr> out;
  for (const char* s : kSchedule) out.push_back(parse_formula(s));
  return out;
}

std::string check_ipc_schedule(const SetPresheaf& x) {
  const std::vector<FormulaPtr> schedule = ipc_schedule();
  const std::vector<std::uint64_t> truth = subterminals_of_one(x.category());
  for (std::uint64_t p : truth) {
    for (std::uint64_t q : truth) {
      for (std::uint64_t r : truth) {
        Structure s(x.category_ptr());
        s.add_object("X", x);
        s.add_proposition("p", p);
        s.add_proposition("q", q);
        s.add_proposition("r", r);
        for (const auto& f : schedule) {
          if (!holds_globally(s, f)) {
            return to_sexpr(*f) + " fails with p,q,r = " + std::to_string(p) + "," + std::to_string(q) + "," +
                   std::to_string(r);
          }
        }
      }
    }
  }
  return {};
}

}  // namespace flasque
