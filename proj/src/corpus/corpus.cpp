#include "flasque/corpus/corpus.hpp"

#include "flasque/errors.hpp"

namespace flasque {

std::vector<std::string> corpus_poset_names() {
  return {"point", "sierpinski", "antichain2", "pseudocircle", "sphere2"};
}

PosetPtr corpus_poset(const std::string& name) {
  if (name == "point") return share(FinPoset::from_relation({"*"}, {}));
  if (name == "sierpinski") return share(FinPoset::from_relation({"p0", "p1"}, {{"p0", "p1"}}));
  if (name == "antichain2") return share(FinPoset::from_relation({"a", "b"}, {}));
  if (name == "pseudocircle") {
    return share(FinPoset::from_relation({"x", "y", "a", "b"}, {{"x", "a"}, {"x", "b"}, {"y", "a"}, {"y", "b"}}));
  }
  if (name == "sphere2") {
    return share(FinPoset::from_relation({"a", "b", "c", "d", "e", "f"},
                                         {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"},
                                          {"c", "e"}, {"c", "f"}, {"d", "e"}, {"d", "f"}}));
  }
  throw InputError("unknown corpus site \"" + name + "\"");
}

std::vector<std::string> corpus_sheaf_names(const FinPoset& p) {
  std::vector<std::string> out{"const-Z", "const-Z2", "const-Z4", "const-set-2", "terminal", "omega"};
  for (Point x = 0; x < p.size(); ++x) out.push_back("sky-" + p.name(x) + "-Z2");
  return out;
}

CorpusSheaf corpus_sheaf(const PosetPtr& p, const std::string& name) {
  CorpusSheaf out{name, std::nullopt, std::nullopt};
  if (name == "const-Z") {
    out.mod = constant_sheaf(p, FPModule::free(Ring::integers(), 1));
  } else if (name == "const-Z2") {
    out.mod = constant_sheaf(p, FPModule::free(Ring::mod(2), 1));
  } else if (name == "const-Z4") {
    out.mod = constant_sheaf(p, FPModule::free(Ring::mod(4), 1));
  } else if (name == "const-set-2") {
    out.set = constant_sheaf(p, 2);
  } else if (name == "terminal") {
    out.set = terminal_sheaf(p);
  } else if (name == "omega") {
    out.set = subobject_classifier(p);
  } else if (name.rfind("sky-", 0) == 0 && name.size() > 7 && name.substr(name.size() - 3) == "-Z2") {
    const std::string pt = name.substr(4, name.size() - 7);
    out.mod = skyscraper(p, p->index_of(pt), FPModule::free(Ring::mod(2), 1));
  } else {
    throw InputError("unknown corpus sheaf \"" + name + "\"");
  }
  return out;
}

CategoryPtr bg_z2() {
  static const CategoryPtr c = [] {
    FinCategory cat = FinCategory::from_group({"e", "g"}, {{0, 1}, {1, 0}});
    cat.claim_inverse(1, 1);
    return share(std::move(cat));
  }();
  return c;
}

SetPresheaf bg_presheaf(const std::string& name) {
  if (name == "regular") return regular_representation(bg_z2());
  if (name == "terminal") return terminal_presheaf(bg_z2());
  throw InputError("unknown BG presheaf \"" + name + "\" (regular, terminal)");
}

std::vector<NamedMap> corpus_maps() {
  std::vector<NamedMap> out;
  const PosetPtr point = corpus_poset("point");
  for (const auto& n : corpus_poset_names()) {
    PosetPtr p = corpus_poset(n);
    out.push_back({"id-" + n, MonotoneMap::identity(p)});
    out.push_back({n + "->point", MonotoneMap::to_point(p)});
  }
  const PosetPtr sier = corpus_poset("sierpinski");
  for (const auto& src : {"pseudocircle", "sierpinski", "antichain2"}) {
    PosetPtr s = corpus_poset(src);
    std::size_t k = 0;
    for (MonotoneMap& f : all_monotone_maps(s, sier)) {
      out.push_back({std::string(src) + "->sierpinski#" + std::to_string(k++), std::move(f)});
    }
  }
  PosetPtr circle = corpus_poset("pseudocircle"), sphere = corpus_poset("sphere2");
  out.push_back({"equator", MonotoneMap(circle, sphere, {sphere->index_of("a"), sphere->index_of("b"),
                                                         sphere->index_of("c"), sphere->index_of("d")})});
  return out;
}

}  // namespace flasque
