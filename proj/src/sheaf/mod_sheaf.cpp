#include "flasque/sheaf/mod_sheaf.hpp"

#include <algorithm>

#include "flasque/errors.hpp"

namespace flasque {

ModSheaf::ModSheaf(PosetPtr site, Ring ring, std::vector<FPModule> stalks,
                   const std::map<std::pair<Point, Point>, IntMatrix>& edge_maps)
    : site_(std::move(site)), ring_(std::move(ring)), stalks_(std::move(stalks)) {
  const FinPoset& p = *site_;
  const std::size_t n = p.size();
  if (stalks_.size() != n) throw InputError("one stalk per point required");
  for (Point x = 0; x < n; ++x) {
    if (!(stalks_[x].ring() == ring_)) throw InputError("stalk at " + p.name(x) + " is over the wrong ring");
  }
  for (const auto& entry : edge_maps) {
    auto [x, y] = entry.first;
    if (x >= n || y >= n || !p.lt(x, y)) throw InputError("map given for a pair that is not x < y");
  }
  auto edge_map = [&](Point x, Point y) -> IntMatrix {
    const std::string nm = p.name(x) + "<=" + p.name(y);
    auto it = edge_maps.find({x, y});
    if (it == edge_maps.end()) {
      if (stalks_[y].is_zero() || stalks_[x].generators() == 0) return zero_map(stalks_[x], stalks_[y]);
      throw InputError("missing map " + nm);
    }
    IntMatrix m = it->second;
    if (m.rows() != stalks_[y].generators() || m.cols() != stalks_[x].generators()) {
      throw InputError("map " + nm + " has the wrong shape");
    }
    if (!ring_.is_integers()) m.reduce_mod(ring_.modulus);
    if (!is_homomorphism(m, stalks_[x], stalks_[y])) throw InputError("map " + nm + " is not well defined");
    return m;
  };
  comps_.assign(n * n, IntMatrix());
  for (Point x = 0; x < n; ++x) comps_[x * n + x] = IntMatrix::identity(stalks_[x].generators());
  const auto& lin = p.linear_extension();
  for (auto it = lin.rbegin(); it != lin.rend(); ++it) {
    const Point x = *it;
    std::vector<std::pair<Point, IntMatrix>> firsts;
    for (Point z : p.covers(x)) firsts.emplace_back(z, edge_map(x, z));
    for (Point y : p.minimal_open(x).points()) {
      if (y == x) continue;
      bool have = false;
      IntMatrix result;
      for (const auto& [z, m] : firsts) {
        if (!p.le(z, y)) continue;
        IntMatrix composite = comps_[z * n + y] * m;
        if (!ring_.is_integers()) composite.reduce_mod(ring_.modulus);
        if (!have) {
          result = std::move(composite);
          have = true;
        } else if (!maps_equal(composite, result, stalks_[y])) {
          throw InputError("functoriality fails for " + p.name(x) + "<=" + p.name(y));
        }
      }
      comps_[x * n + y] = std::move(result);
    }
  }
  for (const auto& [edge, m] : edge_maps) {
    auto [x, y] = edge;
    if (std::find(p.covers(x).begin(), p.covers(x).end(), y) != p.covers(x).end()) continue;
    if (m.rows() != stalks_[y].generators() || m.cols() != stalks_[x].generators() ||
        !maps_equal(m, comps_[x * n + y], stalks_[y])) {
      throw InputError("functoriality fails for " + p.name(x) + "<=" + p.name(y));
    }
  }
}

const IntMatrix& ModSheaf::comp(Point x, Point y) const {
  if (!site_->le(x, y)) throw InputError("comparison map requested for incomparable points");
  return comps_[x * site_->size() + y];
}

std::map<std::pair<Point, Point>, IntMatrix> ModSheaf::edge_maps() const {
  std::map<std::pair<Point, Point>, IntMatrix> out;
  for (const auto& e : site_->hasse_edges()) out[e] = comp(e.first, e.second);
  return out;
}

bool ModSheaf::has_finite_stalks() const {
  return std::all_of(stalks_.begin(), stalks_.end(), [](const FPModule& m) { return m.is_finite(); });
}

ModSheaf constant_sheaf(const PosetPtr& p, const FPModule& m) {
  std::map<std::pair<Point, Point>, IntMatrix> maps;
  for (const auto& e : p->hasse_edges()) maps[e] = IntMatrix::identity(m.generators());
  return ModSheaf(p, m.ring(), std::vector<FPModule>(p->size(), m), maps);
}

ModSheaf zero_sheaf(const PosetPtr& p, const Ring& ring) { return constant_sheaf(p, FPModule::zero(ring)); }

ModSheaf skyscraper(const PosetPtr& p, Point x, const FPModule& m) {
  if (x >= p->size()) throw InputError("unknown point for skyscraper");
  std::vector<FPModule> stalks(p->size(), FPModule::zero(m.ring()));
  for (Point y = 0; y < p->size(); ++y) {
    if (p->le(y, x)) stalks[y] = m;
  }
  std::map<std::pair<Point, Point>, IntMatrix> maps;
  for (const auto& [a, b] : p->hasse_edges()) {
    maps[{a, b}] = p->le(b, x) ? IntMatrix::identity(m.generators()) : zero_map(stalks[a], stalks[b]);
  }
  return ModSheaf(p, m.ring(), stalks, maps);
}

ModSheaf direct_sum(const ModSheaf& f, const ModSheaf& g) {
  const FinPoset& p = f.site();
  std::vector<FPModule> stalks;
  for (Point x = 0; x < p.size(); ++x) stalks.push_back(FPModule::direct_sum({f.stalk(x), g.stalk(x)}));
  std::map<std::pair<Point, Point>, IntMatrix> maps;
  for (const auto& [a, b] : p.hasse_edges()) maps[{a, b}] = block_diagonal({f.comp(a, b), g.comp(a, b)});
  return ModSheaf(f.site_ptr(), f.ring(), stalks, maps);
}

IntVector SectionModule::value(const IntVector& coords, Point x) const {
  IntVector all = realization * coords;
  auto it = std::find(points.begin(), points.end(), x);
  if (it == points.end()) throw InputError("point outside the section's domain");
  const std::size_t i = static_cast<std::size_t>(it - points.begin());
  const std::size_t end = i + 1 < offsets.size() ? offsets[i + 1] : ambient.generators();
  return IntVector(all.begin() + static_cast<std::ptrdiff_t>(offsets[i]), all.begin() + static_cast<std::ptrdiff_t>(end));
}

std::optional<IntVector> SectionModule::coordinates_of(const IntVector& ambient_vector) const {
  return coordinates(realization, ambient, ambient_vector);
}

SectionModule sections(const ModSheaf& f, Open u) {
  const FinPoset& p = f.site();
  if (!p.is_open(u)) throw InputError("sections requested over a set that is not open");
  SectionModule s;
  s.domain = u;
  s.points = u.points();
  std::vector<FPModule> parts;
  std::size_t off = 0;
  for (Point x : s.points) {
    s.offsets.push_back(off);
    off += f.stalk(x).generators();
    parts.push_back(f.stalk(x));
  }
  s.ambient = parts.empty() ? FPModule::zero(f.ring()) : FPModule::direct_sum(parts);
  auto offset_of = [&](Point x) {
    return s.offsets[static_cast<std::size_t>(std::find(s.points.begin(), s.points.end(), x) - s.points.begin())];
  };
  std::vector<FPModule> edge_targets;
  std::vector<std::pair<Point, Point>> edges;
  for (const auto& [a, b] : p.hasse_edges()) {
    if (u.contains(a)) {
      edges.emplace_back(a, b);
      edge_targets.push_back(f.stalk(b));
    }
  }
  FPModule target = edge_targets.empty() ? FPModule::zero(f.ring()) : FPModule::direct_sum(edge_targets);
  IntMatrix d(target.generators(), off);
  std::size_t row = 0;
  for (const auto& [a, b] : edges) {
    d.paste(row, offset_of(a), f.comp(a, b));
    const std::size_t gb = f.stalk(b).generators();
    for (std::size_t i = 0; i < gb; ++i) d(row + i, offset_of(b) + i) -= 1;
    row += gb;
  }
  KernelResult k = kernel(d, s.ambient, target);
  s.module = std::move(k.module);
  s.realization = std::move(k.inclusion);
  return s;
}

SectionModule global_sections(const ModSheaf& f) { return sections(f, f.site().whole()); }

IntMatrix restriction(const SectionModule& from, const SectionModule& to) {
  if (!to.domain.subset_of(from.domain)) throw InputError("restriction to a set that is not contained in the domain");
  IntMatrix r(to.module.generators(), from.module.generators());
  for (std::size_t c = 0; c < from.module.generators(); ++c) {
    IntVector all = from.realization.column(c);
    IntVector w(to.ambient.generators());
    for (std::size_t i = 0; i < to.points.size(); ++i) {
      const Point x = to.points[i];
      const std::size_t j = static_cast<std::size_t>(std::find(from.points.begin(), from.points.end(), x) - from.points.begin());
      const std::size_t len = (i + 1 < to.offsets.size() ? to.offsets[i + 1] : to.ambient.generators()) - to.offsets[i];
      for (std::size_t k = 0; k < len; ++k) w[to.offsets[i] + k] = all[from.offsets[j] + k];
    }
    auto coords = to.coordinates_of(w);
    if (!coords) throw InputError("restricted family is not a section");
    for (std::size_t rr = 0; rr < r.rows(); ++rr) r(rr, c) = (*coords)[rr];
  }
  return r;
}

void ModMorphism::validate() const {
  const FinPoset& p = source.site();
  if (!(p == target.site())) throw InputError("morphism between sheaves on different sites");
  if (components.size() != p.size()) throw InputError("morphism needs one component per point");
  for (Point x = 0; x < p.size(); ++x) {
    if (!is_homomorphism(components[x], source.stalk(x), target.stalk(x))) {
      throw InputError("component at " + p.name(x) + " is not a module map");
    }
  }
  for (const auto& [x, y] : p.hasse_edges()) {
    if (!maps_equal(target.comp(x, y) * components[x], components[y] * source.comp(x, y), target.stalk(y))) {
      throw InputError("naturality fails for " + p.name(x) + "<=" + p.name(y));
    }
  }
}

ModMorphism identity_morphism(const ModSheaf& f) {
  std::vector<IntMatrix> comps;
  for (const auto& s : f.stalks()) comps.push_back(IntMatrix::identity(s.generators()));
  return {f, f, comps};
}

ModMorphism scalar_morphism(const ModSheaf& f, const Integer& k) {
  ModMorphism m = identity_morphism(f);
  for (auto& c : m.components) {
    for (std::size_t i = 0; i < c.rows(); ++i) c(i, i) = k;
  }
  return m;
}

ModMorphism compose(const ModMorphism& g, const ModMorphism& f) {
  std::vector<IntMatrix> comps;
  for (std::size_t x = 0; x < f.components.size(); ++x) comps.push_back(g.components[x] * f.components[x]);
  return {f.source, g.target, comps};
}

bool is_mono(const ModMorphism& m) {
  for (Point x = 0; x < m.components.size(); ++x) {
    if (!is_injective(m.components[x], m.source.stalk(x), m.target.stalk(x))) return false;
  }
  return true;
}

bool is_epi(const ModMorphism& m) {
  for (Point x = 0; x < m.components.size(); ++x) {
    if (!is_surjective(m.components[x], m.target.stalk(x))) return false;
  }
  return true;
}

IntMatrix sections_map(const ModMorphism& m, const SectionModule& from, const SectionModule& to) {
  std::vector<IntMatrix> blocks;
  for (Point x : from.points) blocks.push_back(m.components[x]);
  IntMatrix big = blocks.empty() ? IntMatrix(0, 0) : block_diagonal(blocks);
  IntMatrix out(to.module.generators(), from.module.generators());
  for (std::size_t c = 0; c < from.module.generators(); ++c) {
    IntVector w = big * from.realization.column(c);
    auto coords = to.coordinates_of(w);
    if (!coords) throw InputError("image of a section is not a section");
    for (std::size_t r = 0; r < out.rows(); ++r) out(r, c) = (*coords)[r];
  }
  return out;
}

std::string ShortExact::violation() const {
  const FinPoset& p = i.target.site();
  for (Point x = 0; x < p.size(); ++x) {
    const FPModule& a = i.source.stalk(x);
    const FPModule& b = i.target.stalk(x);
    const FPModule& c = this->p.target.stalk(x);
    const IntMatrix& ix = i.components[x];
    const IntMatrix& px = this->p.components[x];
    if (!is_injective(ix, a, b)) return "i is not injective at " + p.name(x);
    if (!is_surjective(px, c)) return "p is not surjective at " + p.name(x);
    if (!maps_equal(px * ix, zero_map(a, c), c)) return "p o i != 0 at " + p.name(x);
    KernelResult k = kernel(px, b, c);
    for (std::size_t col = 0; col < k.inclusion.cols(); ++col) {
      if (!preimage(ix, b, k.inclusion.column(col))) return "ker p is not inside im i at " + p.name(x);
    }
  }
  return {};
}

ModSheaf pushforward(const MonotoneMap& f, const ModSheaf& s) {
  const FinPoset& q = f.target();
  std::vector<SectionModule> secs;
  std::vector<FPModule> stalks;
  for (Point y = 0; y < q.size(); ++y) {
    secs.push_back(sections(s, f.preimage(q.minimal_open(y))));
    stalks.push_back(secs.back().module);
  }
  std::map<std::pair<Point, Point>, IntMatrix> maps;
  for (const auto& [a, b] : q.hasse_edges()) maps[{a, b}] = restriction(secs[a], secs[b]);
  return ModSheaf(f.target_ptr(), s.ring(), stalks, maps);
}

ModSheaf pullback(const MonotoneMap& f, const ModSheaf& g) {
  const FinPoset& p = f.source();
  std::vector<FPModule> stalks;
  for (Point x = 0; x < p.size(); ++x) stalks.push_back(g.stalk(f(x)));
  std::map<std::pair<Point, Point>, IntMatrix> maps;
  for (const auto& [a, b] : p.hasse_edges()) maps[{a, b}] = g.comp(f(a), f(b));
  return ModSheaf(f.source_ptr(), g.ring(), stalks, maps);
}

ModMorphism pullback(const MonotoneMap& f, const ModMorphism& m) {
  std::vector<IntMatrix> comps;
  for (Point x = 0; x < f.source().size(); ++x) comps.push_back(m.components[f(x)]);
  return {pullback(f, m.source), pullback(f, m.target), comps};
}

ModSheaf restrict_to_open(const ModSheaf& f, Open u) {
  if (!f.site().is_open(u)) throw InputError("restriction to a set that is not open");
  auto sub = share(f.site().subposet(u));
  std::vector<Point> pts = u.points();
  std::vector<FPModule> stalks;
  for (Point x : pts) stalks.push_back(f.stalk(x));
  std::map<std::pair<Point, Point>, IntMatrix> maps;
  for (const auto& [a, b] : sub->hasse_edges()) maps[{a, b}] = f.comp(pts[a], pts[b]);
  return ModSheaf(sub, f.ring(), stalks, maps);
}

SetSheaf underlying_set_sheaf(const ModSheaf& f) {
  const FinPoset& p = f.site();
  std::vector<ElementCoder> coders;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::string>> labels(p.size());
  for (Point x = 0; x < p.size(); ++x) {
    coders.emplace_back(f.stalk(x));
    sizes.push_back(coders.back().size());
    for (std::size_t i = 0; i < sizes.back(); ++i) {
      IntVector v = coders.back().element(i);
      std::string s;
      for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k].str();
      labels[x].push_back("(" + s + ")");
    }
  }
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (const auto& [a, b] : p.hasse_edges()) {
    SetMap m;
    for (std::size_t i = 0; i < sizes[a]; ++i) m.push_back(coders[b].index(f.comp(a, b) * coders[a].element(i)));
    maps[{a, b}] = m;
  }
  return SetSheaf(f.site_ptr(), sizes, maps, labels);
}

}  // namespace flasque

namespace flasque {

SheafCokernel cokernel_sheaf(const ModMorphism& m) {
  const FinPoset& p = m.target.site();
  std::vector<CokernelResult> parts;
  std::vector<FPModule> stalks;
  for (Point x = 0; x < p.size(); ++x) {
    parts.push_back(cokernel(m.components[x], m.target.stalk(x)));
    stalks.push_back(parts.back().module);
  }
  std::map<std::pair<Point, Point>, IntMatrix> maps;
  for (const auto& [a, b] : p.hasse_edges()) maps[{a, b}] = parts[b].projection * m.target.comp(a, b) * parts[a].lift;
  ModSheaf c(m.target.site_ptr(), m.target.ring(), stalks, maps);
  std::vector<IntMatrix> proj;
  for (const auto& part : parts) proj.push_back(part.projection);
  return {c, ModMorphism{m.target, c, proj}};
}

}  // namespace flasque
