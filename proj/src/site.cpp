#include "flasque/site.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "flasque/errors.hpp"

namespace flasque {

std::vector<Point> Open::points() const {
  std::vector<Point> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<Point>(std::countr_zero(b)));
  return out;
}

FinPoset FinPoset::from_relation(std::vector<std::string> names,
                                 const std::vector<std::pair<std::string, std::string>>& le) {
  std::map<std::string, Point> index;
  for (Point i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], i).second) throw InputError("duplicate point '" + names[i] + "'");
  }
  std::vector<std::pair<Point, Point>> pairs;
  for (const auto& [a, b] : le) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw InputError("unknown point '" + a + "' in order relation");
    if (ib == index.end()) throw InputError("unknown point '" + b + "' in order relation");
    pairs.emplace_back(ia->second, ib->second);
  }
  const std::size_t n = names.size();
  return from_relation(n, pairs, std::move(names));
}

FinPoset FinPoset::from_relation(std::size_t n, const std::vector<std::pair<Point, Point>>& le,
                                 std::vector<std::string> names) {
  if (n > kMaxPoints) throw BoundError("posets are limited to 64 points");
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  }
  if (names.size() != n) throw InputError("point name count does not match poset size");
  FinPoset p;
  p.names_ = std::move(names);
  p.up_.assign(n, 0);
  for (Point i = 0; i < n; ++i) p.up_[i] = std::uint64_t{1} << i;
  for (const auto& [a, b] : le) {
    if (a >= n || b >= n) throw InputError("order relation mentions a point out of range");
    p.up_[a] |= std::uint64_t{1} << b;
  }
  // Warshall on bit rows.
  for (Point k = 0; k < n; ++k) {
    for (Point i = 0; i < n; ++i) {
      if ((p.up_[i] >> k) & 1U) p.up_[i] |= p.up_[k];
    }
  }
  for (Point i = 0; i < n; ++i) {
    for (Point j = i + 1; j < n; ++j) {
      if (p.le(i, j) && p.le(j, i)) {
        throw InputError("order is not antisymmetric: " + p.names_[i] + " <= " + p.names_[j] +
                         " and " + p.names_[j] + " <= " + p.names_[i]);
      }
    }
  }
  p.finish();
  return p;
}

void FinPoset::finish() {
  const std::size_t n = names_.size();
  down_.assign(n, 0);
  for (Point i = 0; i < n; ++i) {
    for (Point j = 0; j < n; ++j) {
      if (le(j, i)) down_[i] |= std::uint64_t{1} << j;
    }
  }
  covers_.assign(n, {});
  for (Point x = 0; x < n; ++x) {
    std::uint64_t strict = up_[x] & ~(std::uint64_t{1} << x);
    std::uint64_t above_strict = 0;
    for (Point z : Open(strict).points()) above_strict |= up_[z] & ~(std::uint64_t{1} << z);
    covers_[x] = Open(strict & ~above_strict).points();
  }
  linear_.resize(n);
  std::iota(linear_.begin(), linear_.end(), Point{0});
  std::stable_sort(linear_.begin(), linear_.end(), [&](Point a, Point b) {
    return std::popcount(down_[a]) < std::popcount(down_[b]);
  });
}

std::optional<Point> FinPoset::find(const std::string& name) const {
  for (Point i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

Point FinPoset::index_of(const std::string& name) const {
  auto p = find(name);
  if (!p) throw InputError("unknown point '" + name + "'");
  return *p;
}

Open FinPoset::whole() const {
  return Open(size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1);
}

bool FinPoset::is_open(Open u) const {
  if (!u.subset_of(whole())) return false;
  for (Point x : u.points()) {
    if (!minimal_open(x).subset_of(u)) return false;
  }
  return true;
}

Open FinPoset::up_closure(Open s) const {
  Open out;
  for (Point x : s.points()) out = out | minimal_open(x);
  return out;
}

std::vector<std::pair<Point, Point>> FinPoset::hasse_edges() const {
  std::vector<std::pair<Point, Point>> out;
  for (Point x = 0; x < size(); ++x) {
    for (Point y : covers_[x]) out.emplace_back(x, y);
  }
  return out;
}

std::size_t FinPoset::height() const {
  std::vector<std::size_t> chain(size(), 0);
  std::size_t best = 0;
  for (Point x : linear_) {
    for (Point y : Open(down_[x]).points()) {
      if (y != x) chain[x] = std::max(chain[x], chain[y] + 1);
    }
    best = std::max(best, chain[x]);
  }
  return best;
}

std::vector<Point> FinPoset::minimal_points() const {
  std::vector<Point> out;
  for (Point x = 0; x < size(); ++x) {
    if (std::popcount(down_[x]) == 1) out.push_back(x);
  }
  return out;
}

std::vector<Point> FinPoset::maximal_points() const {
  std::vector<Point> out;
  for (Point x = 0; x < size(); ++x) {
    if (covers_[x].empty()) out.push_back(x);
  }
  return out;
}

FinPoset FinPoset::subposet(Open u) const {
  std::vector<Point> pts = u.points();
  std::vector<std::string> names;
  std::vector<std::pair<Point, Point>> le_pairs;
  for (Point i = 0; i < pts.size(); ++i) {
    names.push_back(names_[pts[i]]);
    for (Point j = 0; j < pts.size(); ++j) {
      if (i != j && le(pts[i], pts[j])) le_pairs.emplace_back(i, j);
    }
  }
  return from_relation(pts.size(), le_pairs, std::move(names));
}

Open minimal_open(const FinPoset& p, Point x) {
  if (x >= p.size()) throw InputError("unknown point index " + std::to_string(x));
  return p.minimal_open(x);
}

namespace {

void enumerate_up_sets(const FinPoset& p, const std::vector<Point>& order, std::size_t i,
                       std::uint64_t current, std::vector<Open>& out) {
  if (i == order.size()) {
    out.emplace_back(current);
    return;
  }
  const Point x = order[i];
  enumerate_up_sets(p, order, i + 1, current, out);
  if (p.minimal_open(x).minus(Open::singleton(x)).subset_of(Open(current))) {
    enumerate_up_sets(p, order, i + 1, current | (std::uint64_t{1} << x), out);
  }
}

}  // namespace

std::vector<Open> opens_within(const FinPoset& p, Open u, std::size_t max_points) {
  if (u.size() > max_points) {
    throw BoundError("refusing to enumerate opens of a space with " + std::to_string(u.size()) +
                     " points (bound " + std::to_string(max_points) + ")");
  }
  std::vector<Point> order;
  for (auto it = p.linear_extension().rbegin(); it != p.linear_extension().rend(); ++it) {
    if (u.contains(*it)) order.push_back(*it);
  }
  std::vector<Open> out;
  enumerate_up_sets(p, order, 0, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Open> all_opens(const FinPoset& p, std::size_t max_points) {
  return opens_within(p, p.whole(), max_points);
}

std::string describe(const FinPoset& p, Open u) {
  std::string s = "{";
  bool first = true;
  for (Point x : u.points()) {
    if (!first) s += ",";
    s += p.name(x);
    first = false;
  }
  return s + "}";
}

bool Covering::valid(const FinPoset& p) const {
  if (!p.is_open(target)) return false;
  Open un;
  for (Open m : members) {
    if (!p.is_open(m) || !m.subset_of(target)) return false;
    un = un | m;
  }
  return un == target;
}

Covering minimal_open_covering(const FinPoset& p, Open u) {
  Covering c{u, {}};
  for (Point x : u.points()) c.members.push_back(p.minimal_open(x));
  return c;
}

MonotoneMap::MonotoneMap(PosetPtr source, PosetPtr target, std::vector<Point> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (assignment_.size() != source_->size()) throw InputError("map assignment has wrong length");
  for (Point a : assignment_) {
    if (a >= target_->size()) throw InputError("map assignment points outside the target");
  }
  for (Point x = 0; x < source_->size(); ++x) {
    for (Point y : source_->covers(x)) {
      if (!target_->le(assignment_[x], assignment_[y])) {
        throw InputError("map is not monotone: " + source_->name(x) + " <= " + source_->name(y) +
                         " but " + target_->name(assignment_[x]) + " !<= " +
                         target_->name(assignment_[y]));
      }
    }
  }
}

MonotoneMap MonotoneMap::identity(PosetPtr p) {
  std::vector<Point> a(p->size());
  std::iota(a.begin(), a.end(), Point{0});
  return MonotoneMap(p, p, std::move(a));
}

MonotoneMap MonotoneMap::to_point(PosetPtr p) {
  auto pt = share(FinPoset::from_relation(std::vector<std::string>{"*"}, {}));
  return MonotoneMap(p, pt, std::vector<Point>(p->size(), 0));
}

Open MonotoneMap::preimage(Open v) const {
  std::uint64_t bits = 0;
  for (Point x = 0; x < assignment_.size(); ++x) {
    if (v.contains(assignment_[x])) bits |= std::uint64_t{1} << x;
  }
  return Open(bits);
}

MonotoneMap MonotoneMap::then(const MonotoneMap& g) const {
  std::vector<Point> a(assignment_.size());
  for (Point x = 0; x < a.size(); ++x) a[x] = g(assignment_[x]);
  return MonotoneMap(source_, g.target_ptr(), std::move(a));
}

std::vector<MonotoneMap> all_monotone_maps(const PosetPtr& source, const PosetPtr& target) {
  const std::size_t n = source->size();
  std::vector<std::vector<Point>> results;
  std::vector<Point> a(n, 0);
  // Assign in index order; check against already assigned comparable points.
  auto rec = [&](auto&& self, Point x) -> void {
    if (x == n) {
      results.push_back(a);
      return;
    }
    for (Point t = 0; t < target->size(); ++t) {
      bool ok = true;
      for (Point y = 0; y < x && ok; ++y) {
        if (source->le(y, x) && !target->le(a[y], t)) ok = false;
        if (source->le(x, y) && !target->le(t, a[y])) ok = false;
      }
      if (!ok) continue;
      a[x] = t;
      self(self, x + 1);
    }
  };
  rec(rec, 0);
  std::vector<MonotoneMap> out;
  out.reserve(results.size());
  for (auto& r : results) out.emplace_back(source, target, std::move(r));
  return out;
}

FinCategory::FinCategory(std::vector<std::string> objects, std::vector<ArrowData> arrows,
                         std::vector<Arrow> identities,
                         const std::vector<std::tuple<Arrow, Arrow, Arrow>>& compose)
    : objects_(std::move(objects)), arrows_(std::move(arrows)), identities_(std::move(identities)) {
  if (identities_.size() != objects_.size()) throw InputError("one identity per object required");
  for (const auto& a : arrows_) {
    if (a.src >= objects_.size() || a.dst >= objects_.size()) {
      throw InputError("arrow '" + a.name + "' has an unknown endpoint");
    }
  }
  for (Arrow id : identities_) {
    if (id >= arrows_.size()) throw InputError("identity arrow out of range");
  }
  table_.assign(arrows_.size(), std::vector<std::optional<Arrow>>(arrows_.size()));
  for (const auto& [g, f, gf] : compose) {
    if (g >= arrows_.size() || f >= arrows_.size() || gf >= arrows_.size()) {
      throw InputError("composition entry out of range");
    }
    if (table_[g][f] && *table_[g][f] != gf) {
      throw InputError("conflicting composites for " + arrows_[g].name + " o " + arrows_[f].name);
    }
    table_[g][f] = gf;
  }
  // Composites with an identity are implied.
  for (Object c = 0; c < objects_.size(); ++c) {
    Arrow id = identities_[c];
    for (Arrow f = 0; f < arrows_.size(); ++f) {
      if (arrows_[f].dst == c && !table_[id][f]) table_[id][f] = f;
      if (arrows_[f].src == c && !table_[f][id]) table_[f][id] = f;
    }
  }
  into_.assign(objects_.size(), {});
  for (Arrow a = 0; a < arrows_.size(); ++a) into_[arrows_[a].dst].push_back(a);
}

FinCategory FinCategory::from_group(const std::vector<std::string>& elements,
                                    const std::vector<std::vector<std::size_t>>& table) {
  std::vector<ArrowData> arrows;
  for (const auto& e : elements) arrows.push_back({e, 0, 0});
  std::vector<std::tuple<Arrow, Arrow, Arrow>> comp;
  if (table.size() != elements.size()) throw InputError("group table has wrong size");
  for (Arrow g = 0; g < elements.size(); ++g) {
    if (table[g].size() != elements.size()) throw InputError("group table has wrong size");
    for (Arrow h = 0; h < elements.size(); ++h) comp.emplace_back(g, h, table[g][h]);
  }
  return FinCategory({"*"}, std::move(arrows), {0}, comp);
}

FinCategory FinCategory::opposite_of(const FinPoset& p) {
  std::vector<ArrowData> arrows;
  std::map<std::pair<Point, Point>, Arrow> idx;
  for (Point x = 0; x < p.size(); ++x) {
    for (Point y = 0; y < p.size(); ++y) {
      if (p.le(x, y)) {
        idx[{x, y}] = arrows.size();
        arrows.push_back({p.name(x) + "<=" + p.name(y), y, x});
      }
    }
  }
  std::vector<Arrow> ids;
  for (Point x = 0; x < p.size(); ++x) ids.push_back(idx.at({x, x}));
  std::vector<std::tuple<Arrow, Arrow, Arrow>> comp;
  // (y -> x) o (z -> y) = (z -> x) for x <= y <= z.
  for (const auto& [xy, a] : idx) {
    for (const auto& [yz, b] : idx) {
      if (xy.second == yz.first) comp.emplace_back(a, b, idx.at({xy.first, yz.second}));
    }
  }
  FinCategory c(p.names(), std::move(arrows), std::move(ids), comp);
  c.from_poset_ = true;
  return c;
}

FinCategory FinCategory::discrete(std::vector<std::string> objects) {
  std::vector<ArrowData> arrows;
  std::vector<Arrow> ids;
  for (Object c = 0; c < objects.size(); ++c) {
    ids.push_back(arrows.size());
    arrows.push_back({"id_" + objects[c], c, c});
  }
  return FinCategory(std::move(objects), std::move(arrows), std::move(ids), {});
}

std::optional<Arrow> FinCategory::find_arrow(const std::string& name) const {
  for (Arrow a = 0; a < arrows_.size(); ++a) {
    if (arrows_[a].name == name) return a;
  }
  return std::nullopt;
}

std::optional<Object> FinCategory::find_object(const std::string& name) const {
  for (Object c = 0; c < objects_.size(); ++c) {
    if (objects_[c] == name) return c;
  }
  return std::nullopt;
}

std::optional<Arrow> FinCategory::compose(Arrow g, Arrow f) const { return table_.at(g).at(f); }

std::vector<Arrow> FinCategory::hom(Object d, Object c) const {
  std::vector<Arrow> out;
  for (Arrow a : into_.at(c)) {
    if (arrows_[a].src == d) out.push_back(a);
  }
  return out;
}

void FinCategory::claim_inverse(Arrow a, Arrow inverse) {
  if (a >= arrows_.size() || inverse >= arrows_.size()) throw InputError("inverse claim out of range");
  inverses_.emplace_back(a, inverse);
}

std::vector<std::string> check_category(const FinCategory& c) {
  std::vector<std::string> v;
  const std::size_t n = c.arrow_count();
  auto nm = [&](Arrow a) { return c.arrow(a).name; };
  for (Object o = 0; o < c.object_count(); ++o) {
    Arrow id = c.identity(o);
    if (c.arrow(id).src != o || c.arrow(id).dst != o) {
      v.push_back("identity of " + c.object_name(o) + " has wrong endpoints");
    }
  }
  for (Arrow g = 0; g < n; ++g) {
    for (Arrow f = 0; f < n; ++f) {
      auto gf = c.compose(g, f);
      bool composable = c.arrow(g).src == c.arrow(f).dst;
      if (!composable) {
        if (gf) v.push_back("composite given for non-composable pair " + nm(g) + " o " + nm(f));
        continue;
      }
      if (!gf) {
        v.push_back("missing composite " + nm(g) + " o " + nm(f));
        continue;
      }
      if (c.arrow(*gf).src != c.arrow(f).src || c.arrow(*gf).dst != c.arrow(g).dst) {
        v.push_back("composite " + nm(g) + " o " + nm(f) + " = " + nm(*gf) + " has wrong type");
      }
    }
  }
  for (Arrow f = 0; f < n; ++f) {
    auto l = c.compose(c.identity(c.arrow(f).dst), f);
    auto r = c.compose(f, c.identity(c.arrow(f).src));
    if (l != f) v.push_back("left identity law fails at " + nm(f));
    if (r != f) v.push_back("right identity law fails at " + nm(f));
  }
  if (!v.empty()) return v;
  for (Arrow h = 0; h < n; ++h) {
    for (Arrow g = 0; g < n; ++g) {
      if (c.arrow(h).src != c.arrow(g).dst) continue;
      for (Arrow f = 0; f < n; ++f) {
        if (c.arrow(g).src != c.arrow(f).dst) continue;
        Arrow a = *c.compose(h, *c.compose(g, f));
        Arrow b = *c.compose(*c.compose(h, g), f);
        if (a != b) v.push_back("associativity fails at (" + nm(h) + ", " + nm(g) + ", " + nm(f) + ")");
      }
    }
  }
  for (const auto& [a, inv] : c.claimed_inverses()) {
    const auto& A = c.arrow(a);
    const auto& I = c.arrow(inv);
    if (I.src != A.dst || I.dst != A.src) {
      v.push_back(nm(inv) + " cannot be inverse to " + nm(a) + ": wrong type");
      continue;
    }
    if (c.compose(inv, a) != c.identity(A.src) || c.compose(a, inv) != c.identity(A.dst)) {
      v.push_back(nm(inv) + " is claimed inverse to " + nm(a) + " but the composites are not identities");
    }
  }
  return v;
}

}  // namespace flasque
