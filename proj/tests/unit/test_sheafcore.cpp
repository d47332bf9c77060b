#include <doctest.h>

#include "flasque/corpus/corpus.hpp"
#include "flasque/errors.hpp"
#include "flasque/sheaf/mod_sheaf.hpp"
#include "flasque/sheaf/set_sheaf.hpp"

using namespace flasque;

namespace {

Open named(const FinPoset& p, std::initializer_list<const char*> names) {
  Open u;
  for (const char* n : names) u = u | Open::singleton(p.index_of(n));
  return u;
}

}  // namespace

TEST_CASE("sections of constant sheaves") {
  PosetPtr s = corpus_poset("sierpinski");
  CHECK(global_sections(constant_sheaf(s, 2)).size() == 2);
  CHECK(sections(constant_sheaf(s, 2), Open()).size() == 1);

  PosetPtr c = corpus_poset("pseudocircle");
  ModSheaf z = constant_sheaf(c, FPModule::free(Ring::integers(), 1));
  Open ab = named(*c, {"a", "b"});
  SectionModule over_ab = sections(z, ab);
  CHECK(over_ab.module.describe() == "Z^2");
  SectionModule whole = global_sections(z);
  CHECK(whole.module.describe() == "Z");
  CHECK(sections(z, Open()).module.is_zero());

  // X -> {a, b} is the diagonal Z -> Z^2.
  IntMatrix r = restriction(whole, over_ab);
  CHECK(is_injective(r, whole.module, over_ab.module));
  CHECK_FALSE(is_surjective(r, over_ab.module));
  CHECK(cokernel(r, over_ab.module).module.describe() == "Z");
  IntVector g = whole.value(IntVector{1}, c->index_of("x"));
  IntVector img = r * IntVector{1};
  CHECK(over_ab.value(img, c->index_of("a")) == g);
  CHECK(over_ab.value(img, c->index_of("b")) == g);

  CHECK(restriction(whole, whole) == IntMatrix::identity(1));
}

TEST_CASE("skyscrapers") {
  PosetPtr s = corpus_poset("sierpinski");
  ModSheaf k = skyscraper(s, s->index_of("p0"), FPModule::free(Ring::mod(2), 1));
  CHECK(k.stalk(s->index_of("p0")).describe() == "Z/2");
  CHECK(k.stalk(s->index_of("p1")).is_zero());
  CHECK(sections(k, named(*s, {"p1"})).module.is_zero());

  PosetPtr pt = corpus_poset("point");
  CHECK(constant_sheaf(pt, 2).stalk_size(0) == 2);
  SetSheaf empty = constant_sheaf(s, 0);
  CHECK(global_sections(empty).empty());
  CHECK(empty == initial_sheaf(s));
}

TEST_CASE("functoriality is checked") {
  PosetPtr c = corpus_poset("pseudocircle");
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (const auto& e : c->hasse_edges()) maps[e] = {0, 1};
  CHECK_NOTHROW(SetSheaf(c, {2, 2, 2, 2}, maps));
  maps.begin()->second = {0, 2};
  CHECK_THROWS_AS(SetSheaf(c, {2, 2, 2, 2}, maps), InputError);

  PosetPtr s = corpus_poset("sierpinski");
  Ring z = Ring::integers();
  // Z/2 -> Z is not well defined unless zero.
  CHECK_THROWS_AS(ModSheaf(s, z, {FPModule::cyclic(z, 2), FPModule::free(z, 1)}, {{{0, 1}, IntMatrix{{1}}}}), InputError);
  CHECK_NOTHROW(ModSheaf(s, z, {FPModule::free(z, 1), FPModule::cyclic(z, 2)}, {{{0, 1}, IntMatrix{{1}}}}));
}

TEST_CASE("pushforward and pullback") {
  PosetPtr c = corpus_poset("pseudocircle");
  Ring z = Ring::integers();
  ModSheaf dz = constant_sheaf(c, FPModule::free(z, 1));
  ModSheaf same = pushforward(MonotoneMap::identity(c), dz);
  for (Point x = 0; x < c->size(); ++x) CHECK(same.stalk(x).describe() == "Z");
  CHECK(pushforward(MonotoneMap::to_point(c), dz).stalk(0).describe() == "Z");
  SetSheaf two = constant_sheaf(c, 2);
  CHECK(pushforward(MonotoneMap::to_point(c), two).stalk_size(0) == global_sections(two).size());

  PosetPtr pt = corpus_poset("point");
  ModSheaf back = pullback(MonotoneMap::to_point(c), constant_sheaf(pt, FPModule::cyclic(z, 4)));
  for (Point x = 0; x < c->size(); ++x) CHECK(back.stalk(x).describe() == "Z/4");

  PosetPtr s = corpus_poset("sierpinski");
  MonotoneMap f(s, c, {c->index_of("x"), c->index_of("a")});
  ModSheaf g = skyscraper(c, c->index_of("x"), FPModule::free(Ring::mod(2), 1));
  ModSheaf fg = pullback(f, g);
  CHECK(fg.stalk(0).describe() == g.stalk(c->index_of("x")).describe());
  CHECK(fg.stalk(1).describe() == g.stalk(c->index_of("a")).describe());
}

TEST_CASE("monos and epis") {
  for (const auto& name : corpus_poset_names()) {
    PosetPtr p = corpus_poset(name);
    ModSheaf dz = constant_sheaf(p, FPModule::free(Ring::integers(), 1));
    ModMorphism id = identity_morphism(dz);
    CHECK(is_mono(id));
    CHECK(is_epi(id));
    ModMorphism twice = scalar_morphism(dz, 2);
    CHECK(is_mono(twice));
    CHECK_FALSE(is_epi(twice));
    SheafCokernel q = cokernel_sheaf(twice);
    for (Point x = 0; x < p->size(); ++x) CHECK(q.sheaf.stalk(x).describe() == "Z/2");
    CHECK(is_epi(q.projection));
    ModSheaf zero = zero_sheaf(p, Ring::integers());
    std::vector<IntMatrix> comps;
    for (Point x = 0; x < p->size(); ++x) comps.push_back(IntMatrix(0, 1));
    CHECK(is_epi(ModMorphism{dz, zero, comps}));
  }
}
