#include <doctest.h>

#include "flasque/corpus/corpus.hpp"
#include "flasque/corpus/enumerate.hpp"
#include "flasque/errors.hpp"
#include "flasque/io/json_io.hpp"
#include "flasque/suite/oracles.hpp"

using namespace flasque;

TEST_CASE("JSON round trip of the built-in corpus") {
  for (const auto& name : corpus_poset_names()) {
    PosetPtr p = corpus_poset(name);
    Json jp = to_json(*p);
    CHECK(poset_from_json(jp) == *p);
    CHECK(round_trip(jp) == jp);
    for (const auto& sh : corpus_sheaf_names(*p)) {
      CorpusSheaf c = corpus_sheaf(p, sh);
      Json j = c.set ? to_json(*c.set) : to_json(*c.mod);
      CHECK_MESSAGE(round_trip(j) == j, (name + "/" + sh));
      if (c.set) CHECK(set_sheaf_from_json(j) == *c.set);
      if (c.set) CHECK(set_sheaf_from_json(to_json(*c.set, false), p) == *c.set);
    }
  }
  for (const auto& m : corpus_maps()) {
    Json j = to_json(m.map);
    CHECK(map_from_json(j).assignment() == m.map.assignment());
  }
  Json g = to_json(bg_presheaf("regular"));
  CHECK(round_trip(g) == g);
}

TEST_CASE("JSON errors") {
  CHECK_THROWS_AS(parse_json("{\"kind\": "), InputError);
  CHECK_THROWS_AS(json_kind(parse_json("{}")), InputError);
  CHECK_THROWS_AS(poset_from_json(parse_json(R"({"format":1,"kind":"poset","points":["a"],"le":[["a","b"]]})")),
                  InputError);
  CHECK_THROWS_AS(set_sheaf_from_json(parse_json(R"({"format":1,"kind":"set-sheaf","stalks":{}})")), InputError);
  Json s = to_json(constant_sheaf(corpus_poset("sierpinski"), 2));
  s["maps"][0]["map"] = Json::array({0, 5});
  CHECK_THROWS_AS(set_sheaf_from_json(s), InputError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("corpus enumeration") {
  CHECK(enumerate_corpus(1, 1).size() == 2);
  CHECK(enumerate_corpus(1, 2).size() == 3);
  CHECK(posets_up_to_iso(2).size() == 2);
  CHECK(posets_up_to_iso(3).size() == 5);
  CHECK(posets_up_to_iso(4).size() == 16);
  CHECK(enumerate_corpus(3, 2).size() == brute_force_sheaf_count(3, 2));
  for (std::size_t m = 1; m <= 4; ++m) CHECK(posets_up_to_iso(m).size() == brute_force_poset_count(m));
  CHECK_THROWS_AS(enumerate_corpus(6, 2), BoundError);
  CHECK_THROWS_AS(enumerate_corpus(3, 4), BoundError);
}

TEST_CASE("sheaves up to isomorphism on the point") {
  // Stalk sizes 0..k, one sheaf each.
  PosetPtr pt = corpus_poset("point");
  for (std::size_t k = 0; k <= 3; ++k) CHECK(set_sheaves_up_to_iso(pt, k).size() == k + 1);
  // On the Sierpinski space: maps [m] -> [n] up to permutations of both sides.
  CHECK(set_sheaves_up_to_iso(corpus_poset("sierpinski"), 1).size() == 3);
}
