#include "flasque/sheaf/set_sheaf.hpp"

#include <algorithm>
#include <functional>

#include "flasque/errors.hpp"

namespace flasque {

SetSheaf::SetSheaf(PosetPtr site, std::vector<std::size_t> sizes,
                   const std::map<std::pair<Point, Point>, SetMap>& edge_maps,
                   std::vector<std::vector<std::string>> labels)
    : site_(std::move(site)), sizes_(std::move(sizes)), labels_(std::move(labels)) {
  const FinPoset& p = *site_;
  const std::size_t n = p.size();
  if (sizes_.size() != n) throw InputError("one stalk per point required");
  if (labels_.empty()) {
    labels_.resize(n);
    for (Point x = 0; x < n; ++x) {
      for (std::size_t s = 0; s < sizes_[x]; ++s) labels_[x].push_back(std::to_string(s));
    }
  }
  if (labels_.size() != n) throw InputError("one label list per point required");
  for (Point x = 0; x < n; ++x) {
    if (labels_[x].size() != sizes_[x]) throw InputError("label count differs from stalk size at " + p.name(x));
  }
  for (const auto& entry : edge_maps) {
    auto [x, y] = entry.first;
    if (x >= n || y >= n || !p.lt(x, y)) throw InputError("map given for a pair that is not x < y");
  }
  comps_.assign(n * n, {});
  for (Point x = 0; x < n; ++x) {
    SetMap id(sizes_[x]);
    for (std::size_t s = 0; s < sizes_[x]; ++s) id[s] = s;
    comps_[x * n + x] = std::move(id);
  }
  auto edge_map = [&](Point x, Point y) -> SetMap {
    auto it = edge_maps.find({x, y});
    if (it == edge_maps.end()) {
      if (sizes_[y] == 1) return SetMap(sizes_[x], 0);
      throw InputError("missing map " + p.name(x) + "<=" + p.name(y));
    }
    const SetMap& m = it->second;
    if (m.size() != sizes_[x]) throw InputError("map " + p.name(x) + "<=" + p.name(y) + " has wrong domain size");
    for (std::size_t v : m) {
      if (v >= sizes_[y]) throw InputError("map " + p.name(x) + "<=" + p.name(y) + " leaves its codomain");
    }
    return m;
  };
  // Maximal points first, so comps out of every cover are already known.
  const auto& lin = p.linear_extension();
  for (auto it = lin.rbegin(); it != lin.rend(); ++it) {
    const Point x = *it;
    std::vector<std::pair<Point, SetMap>> firsts;
    for (Point z : p.covers(x)) firsts.emplace_back(z, edge_map(x, z));
    for (Point y : p.minimal_open(x).points()) {
      if (y == x) continue;
      bool have = false;
      SetMap result;
      for (const auto& [z, m] : firsts) {
        if (!p.le(z, y)) continue;
        const SetMap& rest = comps_[z * n + y];
        SetMap composite(sizes_[x]);
        for (std::size_t s = 0; s < sizes_[x]; ++s) composite[s] = rest[m[s]];
        if (!have) {
          result = std::move(composite);
          have = true;
        } else if (composite != result) {
          throw InputError("functoriality fails for " + p.name(x) + "<=" + p.name(y));
        }
      }
      comps_[x * n + y] = std::move(result);
    }
  }
  // Explicitly given non-Hasse maps must agree with the composite.
  for (const auto& [edge, map] : edge_maps) {
    auto [x, y] = edge;
    if (p.lt(x, y) && comps_[x * n + y] != map) {
      throw InputError("functoriality fails for " + p.name(x) + "<=" + p.name(y));
    }
  }
}

const SetMap& SetSheaf::comp(Point x, Point y) const {
  if (!site_->le(x, y)) throw InputError("comparison map requested for incomparable points");
  return comps_[x * site_->size() + y];
}

SetSheaf constant_sheaf(const PosetPtr& p, std::size_t n) {
  std::map<std::pair<Point, Point>, SetMap> maps;
  SetMap id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  for (const auto& e : p->hasse_edges()) maps[e] = id;
  return SetSheaf(p, std::vector<std::size_t>(p->size(), n), maps);
}

SetSheaf terminal_sheaf(const PosetPtr& p) { return constant_sheaf(p, 1); }
SetSheaf initial_sheaf(const PosetPtr& p) { return constant_sheaf(p, 0); }

SetSheaf skyscraper(const PosetPtr& p, Point x, std::size_t n) {
  if (x >= p->size()) throw InputError("unknown point for skyscraper");
  std::vector<std::size_t> sizes(p->size(), 1);
  for (Point y = 0; y < p->size(); ++y) {
    if (p->le(y, x)) sizes[y] = n;
  }
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (const auto& [a, b] : p->hasse_edges()) {
    if (p->le(b, x)) {
      SetMap id(n);
      for (std::size_t i = 0; i < n; ++i) id[i] = i;
      maps[{a, b}] = id;
    } else {
      maps[{a, b}] = SetMap(sizes[a], 0);
    }
  }
  return SetSheaf(p, sizes, maps);
}

SetSheaf subobject_classifier(const PosetPtr& p) {
  std::vector<std::vector<Open>> stalks(p->size());
  std::vector<std::size_t> sizes(p->size());
  std::vector<std::vector<std::string>> labels(p->size());
  for (Point x = 0; x < p->size(); ++x) {
    stalks[x] = opens_within(*p, p->minimal_open(x));
    sizes[x] = stalks[x].size();
    for (Open v : stalks[x]) labels[x].push_back(describe(*p, v));
  }
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (const auto& [a, b] : p->hasse_edges()) {
    SetMap m;
    for (Open v : stalks[a]) {
      Open r = v & p->minimal_open(b);
      m.push_back(static_cast<std::size_t>(std::find(stalks[b].begin(), stalks[b].end(), r) - stalks[b].begin()));
    }
    maps[{a, b}] = m;
  }
  return SetSheaf(p, sizes, maps, labels);
}

namespace {

// Enumerates sections over u, with values on `pinned` (a subset of u,
// an open) fixed to those of `fixed`. Calls `emit` for each; stops when it
// returns false.
void enumerate_sections(const SetSheaf& f, Open u, Open pinned, const Section& fixed,
                        const std::function<bool(const Section&)>& emit) {
  const FinPoset& p = f.site();
  std::vector<Point> order;
  for (Point x : p.linear_extension()) {
    if (u.contains(x)) order.push_back(x);
  }
  std::vector<std::vector<Point>> lower(p.size());
  for (Point z : order) {
    for (Point y : p.covers(z)) lower[y].push_back(z);
  }
  Section s(p.size(), kUndefined);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == order.size()) {
      if (!emit(s)) stop = true;
      return;
    }
    const Point x = order[i];
    if (!lower[x].empty()) {
      const std::size_t v = f.apply(lower[x][0], x, s[lower[x][0]]);
      for (std::size_t k = 1; k < lower[x].size(); ++k) {
        if (f.apply(lower[x][k], x, s[lower[x][k]]) != v) return;
      }
      if (pinned.contains(x) && fixed[x] != v) return;
      s[x] = v;
      rec(i + 1);
      return;
    }
    if (pinned.contains(x)) {
      s[x] = fixed[x];
      rec(i + 1);
      return;
    }
    for (std::size_t v = 0; v < f.stalk_size(x); ++v) {
      s[x] = v;
      rec(i + 1);
      if (stop) return;
    }
  };
  rec(0);
}

}  // namespace

std::vector<Section> sections(const SetSheaf& f, Open u) {
  if (!f.site().is_open(u)) throw InputError("sections requested over a set that is not open");
  std::vector<Section> out;
  enumerate_sections(f, u, Open(), {}, [&](const Section& s) {
    out.push_back(s);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Section> global_sections(const SetSheaf& f) { return sections(f, f.site().whole()); }

Section restrict_section(const Section& s, Open v) {
  Section out(s.size(), kUndefined);
  for (Point x : v.points()) out[x] = s[x];
  return out;
}

bool is_section(const SetSheaf& f, Open u, const Section& s) {
  const FinPoset& p = f.site();
  if (s.size() != p.size()) return false;
  for (Point x : u.points()) {
    if (s[x] >= f.stalk_size(x)) return false;
    for (Point y : p.covers(x)) {
      if (f.apply(x, y, s[x]) != s[y]) return false;
    }
  }
  return true;
}

std::optional<Section> extend_section(const SetSheaf& f, Open u, const Section& s, Open w) {
  if (!u.subset_of(w)) throw InputError("extension target does not contain the section's domain");
  std::optional<Section> found;
  enumerate_sections(f, w, u, s, [&](const Section& t) {
    found = t;
    return false;
  });
  return found;
}

SetSheaf product(const SetSheaf& f, const SetSheaf& g) {
  const FinPoset& p = f.site();
  if (!(p == g.site())) throw InputError("product of sheaves on different sites");
  std::vector<std::size_t> sizes(p.size());
  for (Point x = 0; x < p.size(); ++x) sizes[x] = f.stalk_size(x) * g.stalk_size(x);
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (const auto& [x, y] : p.hasse_edges()) {
    SetMap m(sizes[x]);
    for (std::size_t a = 0; a < f.stalk_size(x); ++a) {
      for (std::size_t b = 0; b < g.stalk_size(x); ++b) {
        m[a * g.stalk_size(x) + b] = f.apply(x, y, a) * g.stalk_size(y) + g.apply(x, y, b);
      }
    }
    maps[{x, y}] = m;
  }
  return SetSheaf(f.site_ptr(), sizes, maps);
}

std::pair<SetSheaf, std::vector<SetMap>> subsheaf(const SetSheaf& f, const std::vector<std::vector<bool>>& keep) {
  const FinPoset& p = f.site();
  std::vector<SetMap> incl(p.size());
  std::vector<std::vector<std::size_t>> index(p.size());
  std::vector<std::size_t> sizes(p.size());
  std::vector<std::vector<std::string>> labels(p.size());
  for (Point x = 0; x < p.size(); ++x) {
    index[x].assign(f.stalk_size(x), kUndefined);
    for (std::size_t s = 0; s < f.stalk_size(x); ++s) {
      if (!keep[x][s]) continue;
      index[x][s] = incl[x].size();
      incl[x].push_back(s);
      labels[x].push_back(f.label(x, s));
    }
    sizes[x] = incl[x].size();
  }
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (const auto& [x, y] : p.hasse_edges()) {
    SetMap m;
    for (std::size_t s : incl[x]) {
      std::size_t t = index[y][f.apply(x, y, s)];
      if (t == kUndefined) throw InputError("subsheaf is not closed under comparison maps");
      m.push_back(t);
    }
    maps[{x, y}] = m;
  }
  return {SetSheaf(f.site_ptr(), sizes, maps, labels), incl};
}

void SetMorphism::validate() const {
  const FinPoset& p = source.site();
  if (!(p == target.site())) throw InputError("morphism between sheaves on different sites");
  if (components.size() != p.size()) throw InputError("morphism needs one component per point");
  for (Point x = 0; x < p.size(); ++x) {
    if (components[x].size() != source.stalk_size(x)) throw InputError("component at " + p.name(x) + " has wrong domain");
    for (std::size_t v : components[x]) {
      if (v >= target.stalk_size(x)) throw InputError("component at " + p.name(x) + " leaves its codomain");
    }
  }
  for (const auto& [x, y] : p.hasse_edges()) {
    for (std::size_t s = 0; s < source.stalk_size(x); ++s) {
      if (target.apply(x, y, components[x][s]) != components[y][source.apply(x, y, s)]) {
        throw InputError("naturality fails for " + p.name(x) + "<=" + p.name(y));
      }
    }
  }
}

SetMorphism identity_morphism(const SetSheaf& f) {
  std::vector<SetMap> comps(f.site().size());
  for (Point x = 0; x < comps.size(); ++x) {
    for (std::size_t s = 0; s < f.stalk_size(x); ++s) comps[x].push_back(s);
  }
  return {f, f, comps};
}

bool is_mono(const SetMorphism& m) {
  for (Point x = 0; x < m.components.size(); ++x) {
    std::vector<bool> hit(m.target.stalk_size(x), false);
    for (std::size_t v : m.components[x]) {
      if (hit[v]) return false;
      hit[v] = true;
    }
  }
  return true;
}

bool is_epi(const SetMorphism& m) {
  for (Point x = 0; x < m.components.size(); ++x) {
    std::vector<bool> hit(m.target.stalk_size(x), false);
    for (std::size_t v : m.components[x]) hit[v] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  }
  return true;
}

SetSheaf pushforward(const MonotoneMap& f, const SetSheaf& s) {
  const FinPoset& q = f.target();
  std::vector<std::vector<Section>> stalks(q.size());
  std::vector<std::size_t> sizes(q.size());
  for (Point y = 0; y < q.size(); ++y) {
    stalks[y] = sections(s, f.preimage(q.minimal_open(y)));
    sizes[y] = stalks[y].size();
  }
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (const auto& [a, b] : q.hasse_edges()) {
    Open vb = f.preimage(q.minimal_open(b));
    SetMap m;
    for (const Section& sec : stalks[a]) {
      Section r = restrict_section(sec, vb);
      m.push_back(static_cast<std::size_t>(std::lower_bound(stalks[b].begin(), stalks[b].end(), r) - stalks[b].begin()));
    }
    maps[{a, b}] = m;
  }
  return SetSheaf(f.target_ptr(), sizes, maps);
}

SetSheaf pullback(const MonotoneMap& f, const SetSheaf& g) {
  const FinPoset& p = f.source();
  std::vector<std::size_t> sizes(p.size());
  std::vector<std::vector<std::string>> labels(p.size());
  for (Point x = 0; x < p.size(); ++x) {
    sizes[x] = g.stalk_size(f(x));
    labels[x] = g.labels()[f(x)];
  }
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (const auto& [a, b] : p.hasse_edges()) maps[{a, b}] = g.comp(f(a), f(b));
  return SetSheaf(f.source_ptr(), sizes, maps, labels);
}

SetMorphism pullback(const MonotoneMap& f, const SetMorphism& m) {
  std::vector<SetMap> comps(f.source().size());
  for (Point x = 0; x < comps.size(); ++x) comps[x] = m.components[f(x)];
  return {pullback(f, m.source), pullback(f, m.target), comps};
}

}  // namespace flasque
