#include <doctest.h>

#include <set>

#include "flasque/corpus/corpus.hpp"
#include "flasque/errors.hpp"
#include "flasque/sheaf/set_sheaf.hpp"
#include "flasque/site.hpp"

using namespace flasque;

namespace {

// Up-sets found by trying every subset.
std::set<std::uint64_t> up_sets_by_brute_force(const FinPoset& p) {
  std::set<std::uint64_t> out;
  const std::size_t n = p.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    bool up = true;
    for (Point x = 0; x < n; ++x) {
      for (Point y = 0; y < n; ++y) {
        if (((bits >> x) & 1U) && p.le(x, y) && !((bits >> y) & 1U)) up = false;
      }
    }
    if (up) out.insert(bits);
  }
  return out;
}

Open named(const FinPoset& p, std::initializer_list<const char*> names) {
  Open u;
  for (const char* n : names) u = u | Open::singleton(p.index_of(n));
  return u;
}

}  // namespace

TEST_CASE("minimal opens are up-closures") {
  PosetPtr s = corpus_poset("sierpinski");
  CHECK(s->minimal_open(s->index_of("p0")) == s->whole());
  CHECK(s->minimal_open(s->index_of("p1")) == named(*s, {"p1"}));

  PosetPtr c = corpus_poset("pseudocircle");
  CHECK(c->minimal_open(c->index_of("x")) == named(*c, {"x", "a", "b"}));
  for (Point m : c->maximal_points()) CHECK(c->minimal_open(m) == Open::singleton(m));
}

TEST_CASE("opens of small posets") {
  CHECK(all_opens(*corpus_poset("point")).size() == 2);
  PosetPtr s = corpus_poset("sierpinski");
  std::vector<Open> opens = all_opens(*s);
  REQUIRE(opens.size() == 3);
  CHECK(std::count(opens.begin(), opens.end(), named(*s, {"p1"})) == 1);
  CHECK(std::count(opens.begin(), opens.end(), Open()) == 1);
  CHECK(all_opens(*corpus_poset("antichain2")).size() == 4);

  for (const auto& name : corpus_poset_names()) {
    PosetPtr p = corpus_poset(name);
    std::set<std::uint64_t> got;
    for (Open u : all_opens(*p)) got.insert(u.bits());
    CHECK_MESSAGE(got == up_sets_by_brute_force(*p), name);
  }
}

TEST_CASE("posets reject cycles and unknown names") {
  CHECK_THROWS_AS(FinPoset::from_relation({"a", "b"}, {{"a", "b"}, {"b", "a"}}), InputError);
  CHECK_THROWS_AS(FinPoset::from_relation({"a", "b"}, {{"a", "c"}}), InputError);
  CHECK_THROWS_AS(FinPoset::from_relation({"a", "a"}, {}), InputError);
}

TEST_CASE("monotone maps and preimages") {
  PosetPtr s = corpus_poset("sierpinski");
  PosetPtr c = corpus_poset("pseudocircle");
  CHECK_THROWS_AS(MonotoneMap(s, c, {c->index_of("a"), c->index_of("x")}), InputError);
  MonotoneMap f(s, c, {c->index_of("x"), c->index_of("a")});
  CHECK(f.preimage(named(*c, {"a"})) == named(*s, {"p1"}));
  CHECK(f.preimage(named(*c, {"b"})).empty());
  CHECK(all_monotone_maps(s, s).size() == 3);
}

TEST_CASE("slices") {
  PosetPtr s = corpus_poset("sierpinski");
  FinPoset t = slice_site(*s, terminal_sheaf(s));
  CHECK(t.size() == 2);
  CHECK(t.hasse_edges().size() == 1);

  PosetPtr pt = corpus_poset("point");
  FinPoset two = slice_site(*pt, constant_sheaf(pt, 2));
  CHECK(two.size() == 2);
  CHECK(two.hasse_edges().empty());

  // Stalks {a, b} -> {c}.
  SetSheaf f(s, {2, 1}, {{{0, 1}, {0, 0}}});
  FinPoset v = slice_site(*s, f);
  CHECK(v.size() == 3);
  CHECK(v.hasse_edges().size() == 2);
  CHECK(v.maximal_points().size() == 1);
  CHECK(v.minimal_points().size() == 2);
}

TEST_CASE("category tables") {
  CategoryPtr g = bg_z2();
  CHECK(check_category(*g).empty());
  CHECK(check_category(FinCategory::discrete({"u", "v", "w"})).empty());

  // g∘g = g with g claimed to be its own inverse.
  FinCategory bad({"*"}, {{"e", 0, 0}, {"g", 0, 0}}, {0}, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});
  bad.claim_inverse(1, 1);
  CHECK_FALSE(check_category(bad).empty());

  FinCategory op = FinCategory::opposite_of(*corpus_poset("sierpinski"));
  CHECK(check_category(op).empty());
  CHECK(op.object_count() == 2);
  CHECK(op.arrow_count() == 3);
}
