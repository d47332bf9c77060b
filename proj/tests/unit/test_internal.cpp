#include <doctest.h>

#include "flasque/corpus/corpus.hpp"
#include "flasque/errors.hpp"
#include "flasque/flabby/flabby.hpp"
#include "flasque/internal/internal.hpp"

using namespace flasque;

namespace {

bool forced(const SetSheaf& x, const std::string& text, Point stage) {
  Structure st(x.site_ptr());
  st.add_object("X", x);
  Forcing f(st, parse_formula(text));
  return f.force(stage);
}

bool holds(const SetSheaf& x, const std::string& text) {
  Structure st(x.site_ptr());
  st.add_object("X", x);
  return holds_globally(st, parse_formula(text));
}

const char* kDecidable = "(forall (x X) (forall (y X) (or (eq x y) (not (eq x y)))))";

}  // namespace

TEST_CASE("parsing formulas") {
  FormulaPtr f = parse_formula("(forall (K (P1 X)) (exists (x X) (forall (y X) (imp (in y K) (eq y x)))))");
  CHECK(to_sexpr(*f) == to_sexpr(*flabby_formula("X")));
  CHECK(to_sexpr(*parse_formula(to_sexpr(*f))) == to_sexpr(*f));
  CHECK(to_sexpr(*parse_formula("(and true (or false true))")) == "(and true (or false true))");

  CHECK_THROWS_AS(parse_formula("(forall (x X) true"), InputError);
  CHECK_THROWS_AS(parse_formula("(xor true false)"), InputError);
  CHECK_THROWS_AS(parse_formula("(eq x)"), InputError);
  CHECK_THROWS_AS(parse_formula(""), InputError);
  CHECK_THROWS_AS(parse_formula("true false"), InputError);
}

TEST_CASE("type checking") {
  PosetPtr s = corpus_poset("sierpinski");
  Structure st(s);
  st.add_object("X", constant_sheaf(s, 2));
  CHECK_THROWS_AS(Forcing(st, parse_formula("(eq x x)")), InputError);
  CHECK_THROWS_AS(Forcing(st, parse_formula("(forall (x X) (forall (x X) true))")), InputError);
  CHECK_THROWS_AS(Forcing(st, parse_formula("(forall (x Y) true)")), InputError);
  CHECK_THROWS_AS(Forcing(st, parse_formula("(forall (x X) (forall (y X) (in x y)))")), InputError);
  CHECK_NOTHROW(Forcing(st, parse_formula("(eq s s)"), {{"s", TypeExpr{"X", false}}}));
}

TEST_CASE("forcing basics") {
  for (const auto& name : corpus_poset_names()) {
    PosetPtr p = corpus_poset(name);
    SetSheaf two = constant_sheaf(p, 2);
    CHECK(holds(two, "true"));
    CHECK(holds(two, "(exists (x X) (eq x x))"));
    for (Point x = 0; x < p->size(); ++x) CHECK_FALSE(forced(two, "false", x));
  }
  PosetPtr s = corpus_poset("sierpinski");
  SetSheaf empty(s, {0, 0}, {{{0, 1}, {}}});
  CHECK_FALSE(forced(empty, "(exists (x X) true)", s->index_of("p1")));
  CHECK(forced(empty, "(forall (x X) false)", s->index_of("p1")));
}

TEST_CASE("decidable equality") {
  CHECK(holds(constant_sheaf(corpus_poset("point"), 2), kDecidable));
  PosetPtr s = corpus_poset("sierpinski");
  // {0, 1} -> {*}: 0 and 1 become equal at p1.
  SetSheaf glue(s, {2, 1}, {{{0, 1}, {0, 0}}});
  CHECK_FALSE(forced(glue, kDecidable, s->index_of("p0")));
  CHECK(forced(glue, kDecidable, s->index_of("p1")));
  CHECK(holds(constant_sheaf(s, 2), kDecidable));
}

TEST_CASE("forcing with a free variable") {
  PosetPtr s = corpus_poset("sierpinski");
  SetSheaf glue(s, {2, 1}, {{{0, 1}, {0, 0}}});
  Structure st(s);
  st.add_object("X", glue);
  Forcing f(st, parse_formula("(exists (y X) (not (eq y s)))"), {{"s", TypeExpr{"X", false}}});
  CHECK_FALSE(f.force(s->index_of("p0"), {0}));
  CHECK_FALSE(f.force(s->index_of("p1"), {0}));
  Forcing g(st, parse_formula("(not (not (eq s t)))"), {{"s", TypeExpr{"X", false}}, {"t", TypeExpr{"X", false}}});
  CHECK(g.force(s->index_of("p1"), {0, 0}));
  // 0 and 1 are identified at p1, so they are not apart at p0.
  CHECK(g.force(s->index_of("p0"), {0, 1}));
  Forcing h(st, parse_formula("(eq s t)"), {{"s", TypeExpr{"X", false}}, {"t", TypeExpr{"X", false}}});
  CHECK_FALSE(h.force(s->index_of("p0"), {0, 1}));
}

TEST_CASE("internal flabbiness") {
  for (const auto& name : corpus_poset_names()) {
    PosetPtr p = corpus_poset(name);
    CHECK(internal_flabby(terminal_sheaf(p)));
    CHECK(internal_flabby(subobject_classifier(p)));
    if (p->size() > 0) CHECK_FALSE(internal_flabby(initial_sheaf(p)));
    for (const auto& sh : corpus_sheaf_names(*p)) {
      CorpusSheaf c = corpus_sheaf(p, sh);
      if (!c.set) continue;
      CHECK_MESSAGE(internal_flabby(*c.set) == is_flabby_local(*c.set), (name + "/" + sh));
    }
  }
  CHECK(internal_flabby(constant_sheaf(corpus_poset("antichain2"), 2)));
  CHECK_FALSE(internal_flabby(constant_sheaf(corpus_poset("pseudocircle"), 2)));

  PosetPtr s = corpus_poset("sierpinski");
  SetSheaf taboo(s, {1, 2}, {{{0, 1}, {0}}});
  CHECK_FALSE(internal_flabby(taboo));
  CHECK(internal_flabby_failures(taboo) == std::vector<Point>{s->index_of("p0")});

  CHECK_THROWS_AS(internal_flabby(*corpus_sheaf(s, "const-Z").mod), UnsupportedError);
  CHECK(internal_flabby(*corpus_sheaf(s, "const-Z2").mod));
}

TEST_CASE("BG") {
  SetPresheaf regular = bg_presheaf("regular");
  CHECK(internal_flabby(regular));
  CHECK(presheaf_global_sections(regular).empty());
  CHECK(internal_flabby(bg_presheaf("terminal")));
  CHECK(check_ipc_schedule(regular).empty());
}

TEST_CASE("intuitionistic tautologies") {
  CHECK(ipc_schedule().size() == 20);
  for (const char* name : {"sierpinski", "pseudocircle"}) {
    PosetPtr p = corpus_poset(name);
    CategoryPtr c = share(FinCategory::opposite_of(*p));
    CHECK(check_ipc_schedule(to_presheaf(subobject_classifier(p), c)).empty());
  }
}
