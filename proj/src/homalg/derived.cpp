#include "flasque/homalg/derived.hpp"

#include <algorithm>
#include <functional>

#include "flasque/errors.hpp"

namespace flasque {

namespace {

struct Embedding {
  ModSheaf sheaf;
  ModMorphism map;
};

Embedding embed(const ModSheaf& c, bool doubled) {
  ModGodement g = godement_embed(c);
  if (!doubled) return {g.sheaf, g.embedding};
  ModGodement gg = godement_embed(g.sheaf);
  return {gg.sheaf, compose(gg.embedding, g.embedding)};
}

}  // namespace

Resolution godement_resolution(const ModSheaf& f, std::size_t length, bool doubled) {
  Resolution r;
  r.sheaf = f;
  Embedding e = embed(f, doubled);
  r.augmentation = e.map;
  r.terms.push_back(e.sheaf);
  ModMorphism last = r.augmentation;
  for (std::size_t n = 1; n <= length; ++n) {
    SheafCokernel c = cokernel_sheaf(last);
    Embedding en = embed(c.sheaf, doubled);
    ModMorphism d = compose(en.map, c.projection);
    r.terms.push_back(en.sheaf);
    r.differentials.push_back(d);
    last = d;
  }
  return r;
}

std::string Resolution::exactness_violation() const {
  const FinPoset& p = sheaf.site();
  for (Point x = 0; x < p.size(); ++x) {
    if (!is_injective(augmentation.components[x], sheaf.stalk(x), terms[0].stalk(x))) {
      return "augmentation not injective at " + p.name(x);
    }
    for (std::size_t n = 0; n + 1 < terms.size(); ++n) {
      const IntMatrix& in = n == 0 ? augmentation.components[x] : differentials[n - 1].components[x];
      FPModule h = homology_at(in, terms[n].stalk(x), differentials[n].components[x], terms[n + 1].stalk(x));
      if (!h.is_zero()) return "not exact at G^" + std::to_string(n) + " stalk " + p.name(x);
    }
  }
  return {};
}

Complex sections_complex(const Resolution& r, Open u) {
  Complex c;
  std::vector<SectionModule> secs;
  for (const auto& g : r.terms) {
    secs.push_back(sections(g, u));
    c.terms.push_back(secs.back().module);
  }
  for (std::size_t n = 0; n < r.differentials.size(); ++n) {
    c.differentials.push_back(sections_map(r.differentials[n], secs[n], secs[n + 1]));
  }
  return c;
}

std::size_t default_nmax(const FinPoset& p) { return p.height() + 1; }

CohomologyTable sheaf_cohomology(const ModSheaf& f, std::optional<std::size_t> nmax, bool doubled) {
  const std::size_t top = nmax.value_or(default_nmax(f.site()));
  Resolution r = godement_resolution(f, top + 1, doubled);
  CohomologyTable t = cohomology(sections_complex(r, f.site().whole()));
  t.groups.resize(top + 1);
  return t;
}

std::vector<ModSheaf> higher_direct_image(const MonotoneMap& f, const ModSheaf& s, std::optional<std::size_t> nmax) {
  const std::size_t top = nmax.value_or(default_nmax(s.site()));
  const FinPoset& q = f.target();
  Resolution r = godement_resolution(s, top + 1);
  // data[q][n], secs[q][n]
  std::vector<std::vector<SectionModule>> secs(q.size());
  std::vector<std::vector<HomologyData>> data(q.size());
  for (Point y = 0; y < q.size(); ++y) {
    Open v = f.preimage(q.minimal_open(y));
    Complex c;
    for (const auto& g : r.terms) {
      secs[y].push_back(sections(g, v));
      c.terms.push_back(secs[y].back().module);
    }
    for (std::size_t n = 0; n < r.differentials.size(); ++n) {
      c.differentials.push_back(sections_map(r.differentials[n], secs[y][n], secs[y][n + 1]));
    }
    for (std::size_t n = 0; n <= top; ++n) {
      const FPModule& m = c.terms[n];
      IntMatrix in = n == 0 ? IntMatrix(m.generators(), 0) : c.differentials[n - 1];
      data[y].push_back(homology_data(in, m, c.differentials[n], c.terms[n + 1]));
    }
  }
  std::vector<ModSheaf> out;
  for (std::size_t n = 0; n <= top; ++n) {
    std::vector<FPModule> stalks;
    for (Point y = 0; y < q.size(); ++y) stalks.push_back(data[y][n].module);
    std::map<std::pair<Point, Point>, IntMatrix> maps;
    for (const auto& [a, b] : q.hasse_edges()) {
      const HomologyData& ha = data[a][n];
      const HomologyData& hb = data[b][n];
      IntMatrix res = restriction(secs[a][n], secs[b][n]);
      IntMatrix m(hb.module.generators(), ha.module.generators());
      for (std::size_t i = 0; i < ha.module.generators(); ++i) {
        auto cls = hb.class_of(res * ha.representative(i));
        if (!cls) throw InputError("restriction of a cycle is not a cycle");
        for (std::size_t k = 0; k < m.rows(); ++k) m(k, i) = (*cls)[k];
      }
      maps[{a, b}] = m;
    }
    out.emplace_back(f.target_ptr(), s.ring(), stalks, maps);
  }
  return out;
}

StalkFormulaReport stalk_formula_check(const MonotoneMap& f, const ModSheaf& s, std::optional<std::size_t> nmax) {
  const std::size_t top = nmax.value_or(default_nmax(s.site()));
  const FinPoset& q = f.target();
  StalkFormulaReport rep;
  std::vector<ModSheaf> images = higher_direct_image(f, s, top);
  rep.table.resize(top + 1);
  for (Point y = 0; y < q.size(); ++y) {
    Open v = f.preimage(q.minimal_open(y));
    CohomologyTable local;
    if (!v.empty()) local = sheaf_cohomology(restrict_to_open(s, v), top);
    for (std::size_t n = 0; n <= top; ++n) {
      const std::string lhs = images[n].stalk(y).describe();
      const std::string rhs = n < local.groups.size() ? local.groups[n].describe() : "0";
      rep.table[n].push_back(lhs);
      if (lhs != rhs) {
        rep.mismatches.push_back("R^" + std::to_string(n) + " at " + q.name(y) + ": " + lhs + " vs H^" +
                                 std::to_string(n) + "(f^-1 U) = " + rhs);
      }
    }
  }
  return rep;
}

CohomologyTable order_complex_cohomology(const FinPoset& p, const FPModule& a) {
  // simplices[k]: chains with k+1 elements, as point lists in increasing order.
  std::vector<std::vector<std::vector<Point>>> simplices;
  std::vector<Point> chain;
  std::function<void()> extend = [&]() {
    if (!chain.empty()) {
      if (simplices.size() < chain.size()) simplices.resize(chain.size());
      simplices[chain.size() - 1].push_back(chain);
    }
    for (Point y = 0; y < p.size(); ++y) {
      if (!chain.empty() && !p.lt(chain.back(), y)) continue;
      chain.push_back(y);
      extend();
      chain.pop_back();
    }
  };
  extend();
  for (auto& s : simplices) std::sort(s.begin(), s.end());
  const std::size_t g = a.generators();
  Complex c;
  for (const auto& s : simplices) c.terms.push_back(FPModule::direct_sum(std::vector<FPModule>(s.size(), a)));
  for (std::size_t k = 0; k + 1 < simplices.size(); ++k) {
    const auto& lower = simplices[k];
    const auto& upper = simplices[k + 1];
    IntMatrix d(upper.size() * g, lower.size() * g);
    for (std::size_t i = 0; i < upper.size(); ++i) {
      for (std::size_t drop = 0; drop < upper[i].size(); ++drop) {
        std::vector<Point> face = upper[i];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        const std::size_t j = static_cast<std::size_t>(std::lower_bound(lower.begin(), lower.end(), face) - lower.begin());
        const int sign = drop % 2 == 0 ? 1 : -1;
        for (std::size_t t = 0; t < g; ++t) d(i * g + t, j * g + t) += sign;
      }
    }
    if (!a.ring().is_integers()) d.reduce_mod(a.ring().modulus);
    c.differentials.push_back(d);
  }
  return cohomology(c);
}

namespace {

/// Map induced on cokernels: coker(a) -> coker(b) from a map g between the targets.
ModMorphism induced_on_cokernels(const SheafCokernel& a, const SheafCokernel& b, const ModMorphism& g) {
  ModMorphism out{a.sheaf, b.sheaf, {}};
  const FinPoset& p = a.sheaf.site();
  for (Point x = 0; x < p.size(); ++x) {
    const FPModule& src = a.sheaf.stalk(x);
    IntMatrix m(b.sheaf.stalk(x).generators(), src.generators());
    for (std::size_t j = 0; j < src.generators(); ++j) {
      IntVector e(src.generators());
      e[j] = 1;
      auto v = preimage(a.projection.components[x], src, e);
      if (!v) throw InputError("cokernel projection is not surjective");
      IntVector w = b.sheaf.stalk(x).reduce(b.projection.components[x] * (g.components[x] * *v));
      for (std::size_t r = 0; r < m.rows(); ++r) m(r, j) = w[r];
    }
    out.components.push_back(m);
  }
  return out;
}

HomologyData global_homology(const Resolution& r, std::size_t n, std::vector<SectionModule>& secs) {
  const Open whole = r.sheaf.site().whole();
  while (secs.size() < r.terms.size()) secs.push_back(sections(r.terms[secs.size()], whole));
  const FPModule& m = secs[n].module;
  IntMatrix in = n == 0 ? IntMatrix(m.generators(), 0) : sections_map(r.differentials[n - 1], secs[n - 1], secs[n]);
  IntMatrix out = sections_map(r.differentials.at(n), secs[n], secs[n + 1]);
  return homology_data(in, m, out, secs[n + 1].module);
}

IntMatrix class_matrix(const HomologyData& from, const HomologyData& to, const IntMatrix& chain) {
  IntMatrix m(to.module.generators(), from.module.generators());
  for (std::size_t i = 0; i < from.module.generators(); ++i) {
    auto cls = to.class_of(chain * from.representative(i));
    if (!cls) throw InputError("chain map does not send cycles to cycles");
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, i) = (*cls)[r];
  }
  return m;
}

}  // namespace

ResolutionMap lift_to_resolutions(const ModMorphism& phi, std::size_t length) {
  ResolutionMap out;
  out.morphism = phi;
  out.source.sheaf = phi.source;
  out.target.sheaf = phi.target;
  ModGodement gs = godement_embed(phi.source);
  ModGodement gt = godement_embed(phi.target);
  out.source.augmentation = gs.embedding;
  out.target.augmentation = gt.embedding;
  out.source.terms.push_back(gs.sheaf);
  out.target.terms.push_back(gt.sheaf);
  out.components.push_back(godement_map(phi, gs, gt));
  ModMorphism last_s = gs.embedding;
  ModMorphism last_t = gt.embedding;
  for (std::size_t n = 1; n <= length; ++n) {
    SheafCokernel cs = cokernel_sheaf(last_s);
    SheafCokernel ct = cokernel_sheaf(last_t);
    ModMorphism psi = induced_on_cokernels(cs, ct, out.components.back());
    ModGodement es = godement_embed(cs.sheaf);
    ModGodement et = godement_embed(ct.sheaf);
    last_s = compose(es.embedding, cs.projection);
    last_t = compose(et.embedding, ct.projection);
    out.source.terms.push_back(es.sheaf);
    out.target.terms.push_back(et.sheaf);
    out.source.differentials.push_back(last_s);
    out.target.differentials.push_back(last_t);
    out.components.push_back(godement_map(psi, es, et));
  }
  return out;
}

IntMatrix cohomology_map(const ResolutionMap& m, std::size_t n) {
  std::vector<SectionModule> ss, ts;
  HomologyData hs = global_homology(m.source, n, ss);
  HomologyData ht = global_homology(m.target, n, ts);
  return class_matrix(hs, ht, sections_map(m.components[n], ss[n], ts[n]));
}

std::string long_exact_violation(const ShortExact& s) {
  if (auto v = s.violation(); !v.empty()) return "not a short exact sequence: " + v;
  ResolutionMap li = lift_to_resolutions(s.i, 2);
  ResolutionMap lp = lift_to_resolutions(s.p, 2);
  std::vector<SectionModule> s1, s2, s3;
  HomologyData h1a = global_homology(li.source, 1, s1);
  HomologyData h1b = global_homology(li.target, 1, s2);
  global_homology(lp.target, 1, s3);
  SectionModule g1 = global_sections(s.i.source);
  SectionModule g2 = global_sections(s.i.target);
  SectionModule g3 = global_sections(s.p.target);
  IntMatrix gi = sections_map(s.i, g1, g2);
  IntMatrix gp = sections_map(s.p, g2, g3);

  // δ: lift a global section of M'' into Γ(G^0 M), apply d, pull back to Γ(G^1 M').
  IntMatrix aug3 = sections_map(lp.target.augmentation, g3, s3[0]);
  IntMatrix p0 = sections_map(lp.components[0], s2[0], s3[0]);
  IntMatrix d0 = sections_map(li.target.differentials[0], s2[0], s2[1]);
  IntMatrix i1 = sections_map(li.components[1], s1[1], s2[1]);
  IntMatrix delta(h1a.module.generators(), g3.module.generators());
  for (std::size_t j = 0; j < g3.module.generators(); ++j) {
    IntVector e(g3.module.generators());
    e[j] = 1;
    auto u = preimage(p0, s3[0].module, aug3 * e);
    if (!u) return "Γ(G^0 M) -> Γ(G^0 M'') is not surjective";
    auto z = preimage(i1, s2[1].module, d0 * *u);
    if (!z) return "d(lift) does not come from G^1 M'";
    auto cls = h1a.class_of(*z);
    if (!cls) return "connecting element is not a cycle";
    for (std::size_t r = 0; r < delta.rows(); ++r) delta(r, j) = (*cls)[r];
  }
  IntMatrix hi = class_matrix(h1a, h1b, i1);

  const FPModule zero = FPModule::zero(s.i.source.ring());
  struct Step {
    const char* name;
    IntMatrix in;
    const FPModule* m;
    IntMatrix out;
    const FPModule* b;
  };
  const std::vector<Step> steps = {
      {"Γ(M')", IntMatrix(g1.module.generators(), 0), &g1.module, gi, &g2.module},
      {"Γ(M)", gi, &g2.module, gp, &g3.module},
      {"Γ(M'')", gp, &g3.module, delta, &h1a.module},
      {"H1(M')", delta, &h1a.module, hi, &h1b.module},
  };
  for (const auto& st : steps) {
    if (!maps_equal(st.out * st.in, zero_map(FPModule::free(zero.ring(), st.in.cols()), *st.b), *st.b)) {
      return std::string("composite into and out of ") + st.name + " is not zero";
    }
    try {
      if (!homology_at(st.in, *st.m, st.out, *st.b).is_zero()) return std::string("not exact at ") + st.name;
    } catch (const InputError& e) {
      return std::string("not exact at ") + st.name + ": " + e.what();
    }
  }
  return {};
}

}  // namespace flasque
