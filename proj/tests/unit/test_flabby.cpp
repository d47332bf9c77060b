#include <doctest.h>

#include "flasque/corpus/corpus.hpp"
#include "flasque/errors.hpp"
#include "flasque/flabby/envelope.hpp"
#include "flasque/flabby/flabby.hpp"
#include "flasque/flabby/godement.hpp"
#include "flasque/flabby/injective.hpp"
#include "flasque/flabby/subterminal.hpp"
#include "flasque/suite/oracles.hpp"

using namespace flasque;

namespace {

Open named(const FinPoset& p, std::initializer_list<const char*> names) {
  Open u;
  for (const char* n : names) u = u | Open::singleton(p.index_of(n));
  return u;
}

FPModule field(fp::Elem p) { return FPModule::free(Ring::mod(p), 1); }

// Stalk k at p1 and 0 at p0.
ModSheaf simple_at_p1(const PosetPtr& s, fp::Elem p) {
  return ModSheaf(s, Ring::mod(p), {FPModule::zero(Ring::mod(p)), field(p)}, {});
}

std::vector<IntMatrix> diag_components(const FinPoset& p, std::initializer_list<long long> entries) {
  std::vector<IntMatrix> out;
  auto it = entries.begin();
  for (Point x = 0; x < p.size(); ++x) {
    IntMatrix m(*it == 0 ? 0 : 1, 1);
    if (*it != 0) m(0, 0) = 1;
    out.push_back(m);
    ++it;
  }
  return out;
}

}  // namespace

TEST_CASE("subterminal parts") {
  PosetPtr pt = corpus_poset("point");
  CHECK(enumerate_subterminals(terminal_sheaf(pt), pt->whole()).size() == 2);
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(subterminal_object(constant_sheaf(pt, n)).sheaf.stalk_size(0) == n + 1);
  }

  PosetPtr s = corpus_poset("sierpinski");
  SetSheaf two = constant_sheaf(s, 2);
  std::vector<SubterminalPart> parts = enumerate_subterminals(two, s->whole());
  CHECK(parts.size() == 5);
  std::size_t full = 0, top = 0, empty = 0;
  for (const auto& k : parts) {
    full += k.support == s->whole();
    top += k.support == named(*s, {"p1"});
    empty += k.support.empty();
  }
  CHECK(full == 2);
  CHECK(top == 2);
  CHECK(empty == 1);
  CHECK(enumerate_subterminals(two, Open()).size() == 1);

  SubterminalObject p = subterminal_object(two);
  CHECK(p.sheaf.stalk_size(s->index_of("p1")) == 3);
  CHECK(p.sheaf.stalk_size(s->index_of("p0")) == 5);
  CHECK(is_mono(p.singleton));
}

TEST_CASE("the constant sheaf Z on the pseudocircle is not flabby") {
  PosetPtr c = corpus_poset("pseudocircle");
  ModSheaf z = *corpus_sheaf(c, "const-Z").mod;
  for (const FlabbyVerdict& v : {check_flabby_traditional(z), check_flabby_local(z), check_strongly_flabby(z)}) {
    CHECK_FALSE(v.flabby);
    REQUIRE(v.counterexample);
    CHECK(v.counterexample->open == named(*c, {"a", "b"}));
  }
}

TEST_CASE("flabby examples") {
  for (const auto& name : corpus_poset_names()) {
    PosetPtr p = corpus_poset(name);
    CHECK(is_flabby_traditional(terminal_sheaf(p)));
    CHECK(is_strongly_flabby(terminal_sheaf(p)));
    CHECK(is_flabby_traditional(subobject_classifier(p)));
    for (Point x = 0; x < p->size(); ++x) {
      CHECK(is_flabby_traditional(skyscraper(p, x, FPModule::cyclic(Ring::integers(), 3))));
      CHECK(is_flabby_local(skyscraper(p, x, 2)));
    }
    for (const auto& sh : corpus_sheaf_names(*p)) {
      CorpusSheaf c = corpus_sheaf(p, sh);
      if (c.mod) {
        ModGodement g = godement_embed(*c.mod);
        CHECK(is_mono(g.embedding));
        CHECK(is_flabby_traditional(g.sheaf));
      } else {
        SetGodement g = godement_embed(*c.set);
        CHECK(is_mono(g.embedding));
        CHECK(is_flabby_traditional(g.sheaf));
      }
    }
  }
  // Every sheaf on a discrete space is flabby.
  PosetPtr d = corpus_poset("antichain2");
  CHECK(is_flabby_traditional(constant_sheaf(d, 2)));
  CHECK(is_flabby_local(constant_sheaf(d, 2)));
}

TEST_CASE("an inhabited sheaf that is not flabby") {
  PosetPtr s = corpus_poset("sierpinski");
  SetSheaf x(s, {1, 2}, {{{0, 1}, {0}}});
  CHECK(global_sections(x).size() == 1);
  FlabbyVerdict v = check_flabby_traditional(x);
  CHECK_FALSE(v.flabby);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->open == named(*s, {"p1"}));
  CHECK_FALSE(is_flabby_local(x));
}

TEST_CASE("Godement stalks are products over minimal opens") {
  PosetPtr c = corpus_poset("pseudocircle");
  ModGodement g = godement_embed(*corpus_sheaf(c, "const-Z").mod);
  CHECK(g.sheaf.stalk(c->index_of("x")).describe() == "Z^3");
  CHECK(g.sheaf.stalk(c->index_of("b")).describe() == "Z");

  PosetPtr pt = corpus_poset("point");
  ModGodement h = godement_embed(*corpus_sheaf(pt, "const-Z2").mod);
  CHECK(h.sheaf.stalk(0).describe() == "Z/2");

  // An empty stalk still embeds into a flabby sheaf.
  SetGodement e = godement_embed(initial_sheaf(corpus_poset("sierpinski")));
  CHECK(is_mono(e.embedding));
  CHECK(is_flabby_traditional(e.sheaf));
}

TEST_CASE("strong flabbiness on BG") {
  CHECK_FALSE(is_strongly_flabby(bg_presheaf("regular")));
  CHECK(is_strongly_flabby(bg_presheaf("terminal")));
}

TEST_CASE("injective sheaves over a field") {
  PosetPtr s = corpus_poset("sierpinski");
  for (fp::Elem p : {2, 3}) {
    ModSheaf sky = skyscraper(s, s->index_of("p0"), field(p));
    InjectivityReport r = injectivity_report(sky);
    CHECK(r.injective);
    CHECK(injective_by_extension(to_field_sheaf(sky)));

    ModSheaf simple = simple_at_p1(s, p);
    InjectivityReport q = injectivity_report(simple);
    CHECK_FALSE(q.injective);
    REQUIRE(q.witness);
    CHECK(*q.witness == s->index_of("p0"));
    CHECK(q.ext_dims[s->index_of("p0")] == 1);
    CHECK_FALSE(injective_by_extension(to_field_sheaf(simple)));

    CHECK(is_injective_field(zero_sheaf(s, Ring::mod(p))));
  }
  CHECK_THROWS_AS(injectivity_report(*corpus_sheaf(s, "const-Z").mod), UnsupportedError);
  CHECK_THROWS_AS(injectivity_report(*corpus_sheaf(s, "const-Z4").mod), UnsupportedError);
}

TEST_CASE("extension test") {
  PosetPtr s = corpus_poset("sierpinski");
  const fp::Elem p = 2;
  ModSheaf k = constant_sheaf(s, field(p));
  ModSheaf sky = skyscraper(s, s->index_of("p0"), field(p));
  ModSheaf simple = simple_at_p1(s, p);

  ModMorphism f{k, sky, diag_components(*s, {1, 0})};
  f.validate();
  std::optional<ModMorphism> same = extension_test(sky, identity_morphism(k), f);
  REQUIRE(same);
  CHECK(same->components[0] == f.components[0]);

  // Delta k -> Delta k (+) Delta k, first summand.
  ModSheaf kk = direct_sum(k, k);
  std::vector<IntMatrix> first;
  for (Point x = 0; x < 2; ++x) first.push_back(IntMatrix{{1}, {0}});
  ModMorphism i{k, kk, first};
  i.validate();
  std::optional<ModMorphism> g = extension_test(sky, i, f);
  REQUIRE(g);
  ModMorphism back = compose(*g, i);
  for (Point x = 0; x < 2; ++x) CHECK(maps_equal(back.components[x], f.components[x], sky.stalk(x)));

  // S_p1 inside Delta k; the identity of S_p1 does not extend.
  ModMorphism incl{simple, k, {IntMatrix(1, 0), IntMatrix{{1}}}};
  incl.validate();
  CHECK_FALSE(extension_test(simple, incl, identity_morphism(simple)));

  FamilyReport fam = internal_injective_family(simple, 2);
  CHECK_FALSE(fam.passed);
  REQUIRE(fam.witness);
  CHECK_FALSE(fam.describe().empty());
  CHECK(internal_injective_family(sky, 2).passed);
  CHECK(internal_injective_family(zero_sheaf(s, Ring::mod(p)), 2).passed);
}

TEST_CASE("injective sheaves are flabby") {
  for (const auto& name : {"sierpinski", "antichain2", "pseudocircle"}) {
    PosetPtr p = corpus_poset(name);
    for (const auto& f : field_sheaves_up_to_iso(p, 2, 1)) {
      bool inj = is_injective_field(f);
      CHECK(inj == injective_by_extension(f));
      if (inj) CHECK(is_flabby_traditional(to_mod_sheaf(f)));
    }
  }
}

TEST_CASE("candidate envelope") {
  PosetPtr pt = corpus_poset("point");
  Envelope z = candidate_envelope(zero_sheaf(pt, Ring::mod(2)));
  CHECK(z.sheaf.stalk_size(0) == 1);

  Envelope e = candidate_envelope(constant_sheaf(pt, field(2)));
  CHECK(e.sheaf.stalk_size(0) == 2);
  CHECK(e.embedding_mono);

  Envelope c = candidate_envelope(constant_sheaf(corpus_poset("pseudocircle"), field(2)));
  CHECK(c.embedding_mono);
  CHECK(c.traditional.flabby == c.local.flabby);
  CHECK_FALSE(c.addition_violation.empty());
}
