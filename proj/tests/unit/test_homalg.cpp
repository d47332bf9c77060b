#include <doctest.h>

#include <boost/integer/common_factor.hpp>

#include "flasque/corpus/corpus.hpp"
#include "flasque/homalg/complex.hpp"
#include "flasque/homalg/derived.hpp"
#include "flasque/homalg/module.hpp"
#include "flasque/homalg/smith.hpp"

using namespace flasque;

namespace {

bool is_diagonal(const IntMatrix& d) {
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.cols(); ++c) {
      if (r != c && d(r, c) != 0) return false;
    }
  }
  return true;
}

// Chains x0 < ... < xk of the poset, counted by length.
std::vector<long> chain_counts(const FinPoset& p) {
  std::vector<long> counts;
  std::function<void(Point, std::size_t)> go = [&](Point x, std::size_t len) {
    if (counts.size() <= len) counts.resize(len + 1);
    ++counts[len];
    for (Point y = 0; y < p.size(); ++y) {
      if (p.lt(x, y)) go(y, len + 1);
    }
  };
  for (Point x = 0; x < p.size(); ++x) go(x, 0);
  return counts;
}

ModSheaf const_z(const std::string& site) { return *corpus_sheaf(corpus_poset(site), "const-Z").mod; }

}  // namespace

TEST_CASE("Smith normal form") {
  SmithForm id = smith_normal_form(IntMatrix::identity(3));
  CHECK(id.D == IntMatrix::identity(3));

  IntMatrix a{{2, 4}, {6, 8}};
  SmithForm s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(is_diagonal(s.D));
  // d1 is the gcd of the entries, d1 d2 = |det|.
  Integer g = 0;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) g = boost::integer::gcd(g, a(r, c));
  }
  Integer det = abs(determinant(a));
  CHECK(s.D(0, 0) == g);
  CHECK(s.D(0, 0) * s.D(1, 1) == det);
  CHECK(s.D == IntMatrix{{2, 0}, {0, 4}});

  SmithForm z = smith_normal_form(IntMatrix(2, 3));
  CHECK(z.D.is_zero());
  CHECK(z.rank == 0);
}

TEST_CASE("Smith normal form of a nonsquare matrix") {
  IntMatrix a{{1, 2, 3}, {4, 5, 6}};
  SmithForm s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(s.D == IntMatrix{{1, 0, 0}, {0, 3, 0}});
  CHECK(s.U * s.Uinv == IntMatrix::identity(2));
}

TEST_CASE("finitely presented modules") {
  Ring z = Ring::integers();
  FPModule m(z, 2, IntMatrix{{2, 4}, {6, 8}});
  CHECK(m.describe() == "Z/2 (+) Z/4");
  CHECK(m.order() == Integer(8));
  CHECK(FPModule::free(z, 2).describe() == "Z^2");
  CHECK(FPModule::cyclic(z, 1).is_zero());
  CHECK(FPModule::free(Ring::mod(4), 1).describe() == "Z/4");
  CokernelResult c = cokernel(IntMatrix{{2}}, FPModule::free(z, 1));
  CHECK(c.module.describe() == "Z/2");
}

TEST_CASE("cohomology of cochain complexes") {
  Ring z = Ring::integers();
  // 0 -> Z -x2-> Z -> 0
  Complex c{{FPModule::free(z, 1), FPModule::free(z, 1)}, {IntMatrix{{2}}}};
  CHECK(c.violation().empty());
  CohomologyTable t = cohomology(c);
  CHECK(t.describe() == std::vector<std::string>{"0", "Z/2"});

  Complex exact{{FPModule::free(z, 1), FPModule::free(z, 1)}, {IntMatrix{{1}}}};
  CHECK(exact.violation().empty());
  CHECK(cohomology(exact).describe() == std::vector<std::string>{"0", "0"});

  Complex zero{{FPModule::free(z, 2), FPModule::cyclic(z, 3)}, {IntMatrix(1, 2)}};
  CHECK(cohomology(zero).describe() == std::vector<std::string>{"Z^2", "Z/3"});

  Complex broken{{FPModule::free(z, 1), FPModule::free(z, 1), FPModule::free(z, 1)}, {IntMatrix{{1}}, IntMatrix{{1}}}};
  CHECK_FALSE(broken.violation().empty());
}

TEST_CASE("Godement resolutions") {
  ModSheaf pt = *corpus_sheaf(corpus_poset("point"), "const-Z4").mod;
  Resolution r = godement_resolution(pt, 2);
  CHECK(r.exactness_violation().empty());
  CHECK(r.terms[0].stalk(0).describe() == "Z/4");
  CHECK(r.terms[1].stalk(0).is_zero());

  ModSheaf c = const_z("pseudocircle");
  Resolution rc = godement_resolution(c, 2);
  CHECK(rc.exactness_violation().empty());
  // Product over U_x = {x, a, b}.
  CHECK(rc.terms[0].stalk(c.site().index_of("x")).describe() == "Z^3");
  CHECK(rc.terms[0].stalk(c.site().index_of("a")).describe() == "Z");
}

TEST_CASE("sheaf cohomology") {
  for (const char* s : {"const-Z", "const-Z2", "const-Z4"}) {
    ModSheaf f = *corpus_sheaf(corpus_poset("point"), s).mod;
    CohomologyTable t = sheaf_cohomology(f);
    CHECK(t.groups[0].describe() == f.stalk(0).describe());
    for (std::size_t n = 1; n < t.groups.size(); ++n) CHECK(t.groups[n].is_zero());
  }
  CohomologyTable c = sheaf_cohomology(const_z("pseudocircle"));
  REQUIRE(c.groups.size() >= 3);
  CHECK(c.groups[0].describe() == "Z");
  CHECK(c.groups[1].describe() == "Z");
  CHECK(c.groups[2].describe() == "0");

  CohomologyTable s = sheaf_cohomology(const_z("sphere2"));
  CHECK(s.groups[0].describe() == "Z");
  CHECK(s.groups[1].describe() == "0");
  CHECK(s.groups[2].describe() == "Z");

  CHECK(sheaf_cohomology(const_z("sphere2"), std::nullopt, true).same_as(s));
}

TEST_CASE("Godement sheaves are acyclic") {
  for (const auto& name : corpus_poset_names()) {
    PosetPtr p = corpus_poset(name);
    for (const auto& sh : corpus_sheaf_names(*p)) {
      CorpusSheaf c = corpus_sheaf(p, sh);
      if (!c.mod) continue;
      CohomologyTable t = sheaf_cohomology(godement_embed(*c.mod).sheaf);
      for (std::size_t n = 1; n < t.groups.size(); ++n) CHECK_MESSAGE(t.groups[n].is_zero(), (name + "/" + sh));
    }
  }
}

TEST_CASE("order complex cohomology") {
  Ring z = Ring::integers();
  CHECK(order_complex_cohomology(*corpus_poset("point"), FPModule::cyclic(z, 5)).describe()[0] == "Z/5");

  // The 4-cycle: V = E = 4, connected.
  CohomologyTable c = order_complex_cohomology(*corpus_poset("pseudocircle"), FPModule::free(z, 1));
  CHECK(chain_counts(*corpus_poset("pseudocircle")) == std::vector<long>{4, 4});
  CHECK(c.groups[0].describe() == "Z");
  CHECK(c.groups[1].describe() == "Z");

  // Octahedron boundary: 6 vertices, 12 edges, 8 triangles.
  PosetPtr s = corpus_poset("sphere2");
  CHECK(chain_counts(*s) == std::vector<long>{6, 12, 8});
  CohomologyTable t = order_complex_cohomology(*s, FPModule::free(z, 1));
  CHECK(t.groups[0].describe() == "Z");
  CHECK(t.groups[1].describe() == "0");
  CHECK(t.groups[2].describe() == "Z");
}

TEST_CASE("higher direct images") {
  ModSheaf c = const_z("pseudocircle");
  std::vector<ModSheaf> id = higher_direct_image(MonotoneMap::identity(c.site_ptr()), c);
  for (Point x = 0; x < c.site().size(); ++x) CHECK(id[0].stalk(x).describe() == "Z");
  for (std::size_t n = 1; n < id.size(); ++n) {
    for (Point x = 0; x < c.site().size(); ++x) CHECK(id[n].stalk(x).is_zero());
  }

  std::vector<ModSheaf> r = higher_direct_image(MonotoneMap::to_point(c.site_ptr()), c);
  CHECK(r[1].stalk(0).describe() == "Z");

  ModSheaf s = const_z("sphere2");
  StalkFormulaReport rep = stalk_formula_check(MonotoneMap::to_point(s.site_ptr()), s);
  CHECK(rep.ok());
  CHECK(rep.table[2][0] == "Z");

  for (const auto& m : corpus_maps()) {
    if (m.name.rfind("pseudocircle->sierpinski", 0) != 0) continue;
    CHECK_MESSAGE(stalk_formula_check(m.map, c).ok(), m.name);
  }
}
