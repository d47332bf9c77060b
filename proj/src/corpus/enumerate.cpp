#include "flasque/corpus/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "flasque/errors.hpp"

namespace flasque {

namespace {

std::vector<bool> relation_bits(const FinPoset& p, const std::vector<Point>& perm) {
  // perm[new] = old
  const std::size_t n = p.size();
  std::vector<bool> bits(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) bits[i * n + j] = p.le(perm[i], perm[j]);
  }
  return bits;
}

}  // namespace

std::vector<bool> canonical_form(const FinPoset& p) {
  std::vector<Point> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<bool> best = relation_bits(p, perm);
  while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, relation_bits(p, perm));
  return best;
}

std::vector<std::vector<Point>> automorphisms(const FinPoset& p) {
  std::vector<Point> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Point>> out;
  do {
    bool ok = true;
    for (Point x = 0; x < p.size() && ok; ++x) {
      for (Point y = 0; y < p.size(); ++y) {
        if (p.le(x, y) != p.le(perm[x], perm[y])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<PosetPtr> posets_up_to_iso(std::size_t n) {
  // Every poset has a labeling in which i < j whenever p_i < p_j, so it
  // suffices to try transitive relations on pairs i < j.
  std::vector<std::pair<Point, Point>> pairs;
  for (Point i = 0; i < n; ++i) {
    for (Point j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<std::vector<bool>> forms;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((mask >> k) & 1U) lt[pairs[k].first][pairs[k].second] = true;
    }
    bool transitive = true;
    for (Point a = 0; a < n && transitive; ++a) {
      for (Point b = 0; b < n && transitive; ++b) {
        if (!lt[a][b]) continue;
        for (Point c = 0; c < n; ++c) {
          if (lt[b][c] && !lt[a][c]) {
            transitive = false;
            break;
          }
        }
      }
    }
    if (!transitive) continue;
    std::vector<std::pair<Point, Point>> rel;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((mask >> k) & 1U) rel.push_back(pairs[k]);
    }
    forms.push_back(canonical_form(FinPoset::from_relation(n, rel)));
  }
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  std::vector<PosetPtr> out;
  for (const auto& f : forms) {
    std::vector<std::pair<Point, Point>> rel;
    std::vector<std::string> names;
    for (Point i = 0; i < n; ++i) {
      names.push_back("p" + std::to_string(i));
      for (Point j = 0; j < n; ++j) {
        if (i != j && f[i * n + j]) rel.emplace_back(i, j);
      }
    }
    out.push_back(share(FinPoset::from_relation(n, rel, names)));
  }
  return out;
}

namespace {

struct Labeled {
  std::vector<std::size_t> sizes;
  std::vector<SetMap> maps;  // per Hasse edge
};

// Flattened description used as a hash key.
std::string key_of(const Labeled& s) {
  std::string k;
  for (auto v : s.sizes) k.push_back(static_cast<char>(v));
  for (const auto& m : s.maps) {
    k.push_back('|');
    for (auto v : m) k.push_back(static_cast<char>(v));
  }
  return k;
}

// Calls f on every labeled sheaf (sizes, maps on Hasse edges) with commuting composites.
template <typename F>
void for_each_labeled(const FinPoset& p, std::size_t k, F&& f) {
  const std::size_t n = p.size();
  const auto edges = p.hasse_edges();
  const auto& lin = p.linear_extension();
  Labeled cur;
  cur.sizes.assign(n, 0);
  cur.maps.assign(edges.size(), {});
  std::vector<std::size_t> edge_pos(n * n, SIZE_MAX);
  for (std::size_t e = 0; e < edges.size(); ++e) edge_pos[edges[e].first * n + edges[e].second] = e;
  // comp[x*n+y] for x <= y, built max-first.
  std::vector<SetMap> comp(n * n);
  std::function<void(std::size_t)> over_sizes;
  std::function<void(std::size_t, std::size_t)> over_maps;
  // Points processed from maximal to minimal; at point x all maps out of x are chosen.
  std::vector<Point> order(lin.rbegin(), lin.rend());
  over_maps = [&](std::size_t pi, std::size_t ci) {
    if (pi == n) {
      f(cur);
      return;
    }
    const Point x = order[pi];
    const auto& covers = p.covers(x);
    if (ci == covers.size()) {
      // All maps out of x chosen: derive composites and check agreement.
      comp[x * n + x].resize(cur.sizes[x]);
      std::iota(comp[x * n + x].begin(), comp[x * n + x].end(), 0);
      for (Point y = 0; y < n; ++y) {
        if (y == x || !p.le(x, y)) continue;
        SetMap result;
        bool have = false;
        for (Point z : covers) {
          if (!p.le(z, y)) continue;
          const SetMap& m = cur.maps[edge_pos[x * n + z]];
          SetMap c(cur.sizes[x]);
          for (std::size_t s = 0; s < cur.sizes[x]; ++s) c[s] = comp[z * n + y][m[s]];
          if (!have) {
            result = std::move(c);
            have = true;
          } else if (c != result) {
            return;
          }
        }
        comp[x * n + y] = std::move(result);
      }
      over_maps(pi + 1, 0);
      return;
    }
    const Point y = covers[ci];
    SetMap& m = cur.maps[edge_pos[x * n + y]];
    const std::size_t sx = cur.sizes[x], sy = cur.sizes[y];
    if (sx > 0 && sy == 0) return;
    m.assign(sx, 0);
    for (;;) {
      over_maps(pi, ci + 1);
      std::size_t pos = 0;
      while (pos < sx && ++m[pos] == sy) m[pos++] = 0;
      if (pos == sx) break;
    }
  };
  over_sizes = [&](std::size_t i) {
    if (i == n) {
      over_maps(0, 0);
      return;
    }
    for (std::size_t s = 0; s <= k; ++s) {
      cur.sizes[i] = s;
      over_sizes(i + 1);
    }
  };
  over_sizes(0);
}

SetSheaf materialize(const PosetPtr& p, const Labeled& s) {
  const auto edges = p->hasse_edges();
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (std::size_t e = 0; e < edges.size(); ++e) maps[edges[e]] = s.maps[e];
  return SetSheaf(p, s.sizes, maps);
}

}  // namespace

std::size_t count_labeled_set_sheaves(const PosetPtr& p, std::size_t k) {
  std::size_t count = 0;
  for_each_labeled(*p, k, [&](const Labeled&) { ++count; });
  return count;
}

std::size_t for_each_set_sheaf_up_to_iso(const PosetPtr& p, std::size_t k,
                                         const std::function<void(const SetSheaf&)>& visit,
                                         bool identify_automorphisms) {
  const FinPoset& ps = *p;
  const std::size_t n = ps.size();
  const auto edges = ps.hasse_edges();
  std::map<std::pair<Point, Point>, std::size_t> edge_index;
  for (std::size_t e = 0; e < edges.size(); ++e) edge_index[edges[e]] = e;
  std::vector<std::vector<Point>> autos{{}};
  if (identify_automorphisms) autos = automorphisms(ps);
  std::unordered_set<std::string> seen;
  std::size_t classes = 0;
  for_each_labeled(ps, k, [&](const Labeled& start) {
    if (seen.count(key_of(start))) return;
    ++classes;
    visit(materialize(p, start));
    std::vector<Labeled> stack{start};
    seen.insert(key_of(start));
    auto push = [&](Labeled next) {
      if (seen.insert(key_of(next)).second) stack.push_back(std::move(next));
    };
    while (!stack.empty()) {
      Labeled cur = std::move(stack.back());
      stack.pop_back();
      // Adjacent transpositions of the elements at each point.
      for (Point x = 0; x < n; ++x) {
        for (std::size_t i = 0; i + 1 < cur.sizes[x]; ++i) {
          Labeled next = cur;
          auto swap = [&](std::size_t v) { return v == i ? i + 1 : (v == i + 1 ? i : v); };
          for (std::size_t e = 0; e < edges.size(); ++e) {
            if (edges[e].first == x) std::swap(next.maps[e][i], next.maps[e][i + 1]);
            if (edges[e].second == x) {
              for (auto& v : next.maps[e]) v = swap(v);
            }
          }
          push(std::move(next));
        }
      }
      for (std::size_t a = 1; a < autos.size(); ++a) {
        const auto& pi = autos[a];
        Labeled next = cur;
        for (Point x = 0; x < n; ++x) next.sizes[pi[x]] = cur.sizes[x];
        for (std::size_t e = 0; e < edges.size(); ++e) {
          next.maps[edge_index.at({pi[edges[e].first], pi[edges[e].second]})] = cur.maps[e];
        }
        push(std::move(next));
      }
    }
  });
  return classes;
}

std::vector<SetSheaf> set_sheaves_up_to_iso(const PosetPtr& p, std::size_t k, bool identify_automorphisms) {
  std::vector<SetSheaf> out;
  for_each_set_sheaf_up_to_iso(p, k, [&](const SetSheaf& s) { out.push_back(s); }, identify_automorphisms);
  return out;
}

std::vector<CorpusInstance> enumerate_corpus(std::size_t n, std::size_t k, bool force) {
  if (!force && (n > 5 || k > 3)) {
    throw BoundError("enumerate_corpus bounds are n <= 5 and k <= 3 (use force to exceed)");
  }
  std::vector<CorpusInstance> out;
  for (std::size_t m = 1; m <= n; ++m) {
    for (const PosetPtr& p : posets_up_to_iso(m)) {
      for_each_set_sheaf_up_to_iso(p, k, [&](const SetSheaf& s) { out.push_back({p, s}); });
    }
  }
  return out;
}

}  // namespace flasque
