#include "flasque/suite/oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace flasque {

namespace {

/// All vectors of F_p^n.
std::vector<fp::Vec> all_vectors(std::size_t n, fp::Elem p) {
  std::vector<fp::Vec> out{fp::Vec(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<fp::Vec> next;
    for (const auto& v : out) {
      for (fp::Elem a = 0; a < p; ++a) {
        fp::Vec w = v;
        w[i] = a;
        next.push_back(w);
      }
    }
    out = std::move(next);
  }
  return out;
}

using Relation = std::vector<std::vector<bool>>;

Relation relabel(const Relation& r, const std::vector<std::size_t>& perm) {
  const std::size_t m = r.size();
  Relation out(m, std::vector<bool>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out[perm[i]][perm[j]] = r[i][j];
  }
  return out;
}

/// One relation per iso class of partial orders on m points.
std::vector<Relation> poset_classes(std::size_t m) {
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j) off.push_back({i, j});
    }
  }
  std::set<Relation> seen;
  std::vector<Relation> reps;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << off.size()); ++mask) {
    Relation r(m, std::vector<bool>(m));
    for (std::size_t i = 0; i < m; ++i) r[i][i] = true;
    for (std::size_t b = 0; b < off.size(); ++b) {
      if ((mask >> b) & 1U) r[off[b].first][off[b].second] = true;
    }
    bool ok = true;
    for (std::size_t a = 0; a < m && ok; ++a) {
      for (std::size_t b = 0; b < m && ok; ++b) {
        if (a != b && r[a][b] && r[b][a]) ok = false;
        for (std::size_t c = 0; c < m && ok; ++c) {
          if (r[a][b] && r[b][c] && !r[a][c]) ok = false;
        }
      }
    }
    if (!ok) continue;
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    Relation best = r;
    do {
      best = std::min(best, relabel(r, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) reps.push_back(r);
  }
  return reps;
}

std::size_t sheaf_classes(const Relation& r, std::size_t k) {
  const std::size_t m = r.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && r[i][j]) pairs.push_back({i, j});
    }
  }
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> sizes(m, 0);
  std::function<void(std::size_t)> over_sizes = [&](std::size_t i) {
    if (i < m) {
      for (std::size_t s = 0; s <= k; ++s) {
        sizes[i] = s;
        over_sizes(i + 1);
      }
      return;
    }
    std::vector<std::vector<std::size_t>> maps(pairs.size());
    auto index = [&](std::size_t a, std::size_t b) {
      for (std::size_t t = 0; t < pairs.size(); ++t) {
        if (pairs[t] == std::pair{a, b}) return t;
      }
      return pairs.size();
    };
    auto functorial = [&] {
      for (std::size_t t = 0; t < pairs.size(); ++t) {
        const auto [a, b] = pairs[t];
        for (std::size_t c = 0; c < m; ++c) {
          if (c == a || c == b || !r[b][c]) continue;
          const auto& bc = maps[index(b, c)];
          const auto& ac = maps[index(a, c)];
          for (std::size_t s = 0; s < sizes[a]; ++s) {
            if (bc[maps[t][s]] != ac[s]) return false;
          }
        }
      }
      return true;
    };
    auto key_under = [&](const std::vector<std::vector<std::size_t>>& perms) {
      std::vector<std::size_t> key(sizes.begin(), sizes.end());
      for (std::size_t t = 0; t < pairs.size(); ++t) {
        const auto [a, b] = pairs[t];
        std::vector<std::size_t> img(sizes[a]);
        for (std::size_t s = 0; s < sizes[a]; ++s) img[perms[a][s]] = perms[b][maps[t][s]];
        key.insert(key.end(), img.begin(), img.end());
      }
      return key;
    };
    auto canonical = [&] {
      std::vector<std::vector<std::size_t>> perms(m);
      for (std::size_t x = 0; x < m; ++x) {
        perms[x].resize(sizes[x]);
        std::iota(perms[x].begin(), perms[x].end(), 0);
      }
      std::vector<std::size_t> best = key_under(perms);
      std::function<void(std::size_t)> rec = [&](std::size_t x) {
        if (x == m) {
          best = std::min(best, key_under(perms));
          return;
        }
        std::sort(perms[x].begin(), perms[x].end());
        do {
          rec(x + 1);
        } while (std::next_permutation(perms[x].begin(), perms[x].end()));
      };
      rec(0);
      return best;
    };
    std::function<void(std::size_t, std::size_t)> over_maps = [&](std::size_t t, std::size_t s) {
      if (t == pairs.size()) {
        if (functorial()) seen.insert(canonical());
        return;
      }
      const auto [a, b] = pairs[t];
      if (s == 0) maps[t].assign(sizes[a], 0);
      if (s == sizes[a]) {
        over_maps(t + 1, 0);
        return;
      }
      for (std::size_t v = 0; v < sizes[b]; ++v) {
        maps[t][s] = v;
        over_maps(t, s + 1);
      }
    };
    over_maps(0, 0);
  };
  over_sizes(0);
  return seen.size();
}

}  // namespace

bool injective_by_extension(const FieldSheaf& i) {
  const FinPoset& ps = i.site();
  const fp::Elem p = i.prime();
  for (Point x = 0; x < ps.size(); ++x) {
    const Open ux = ps.minimal_open(x);
    const std::vector<fp::Vec> ix = all_vectors(i.dim(x), p);
    for (Open w : opens_within(ps, ux)) {
      const std::vector<Point> pts = w.points();
      std::set<std::vector<fp::Vec>> restricted;
      for (const auto& v : ix) {
        std::vector<fp::Vec> fam;
        for (Point y : pts) fam.push_back(fp::multiply(i.comp(x, y), v, p));
        restricted.insert(fam);
      }
      std::vector<fp::Vec> fam(pts.size());
      bool ok = true;
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (!ok) return;
        if (k == pts.size()) {
          for (std::size_t a = 0; a < pts.size(); ++a) {
            for (std::size_t b = 0; b < pts.size(); ++b) {
              if (ps.le(pts[a], pts[b]) && fp::multiply(i.comp(pts[a], pts[b]), fam[a], p) != fam[b]) return;
            }
          }
          if (!restricted.count(fam)) ok = false;
          return;
        }
        for (const auto& v : all_vectors(i.dim(pts[k]), p)) {
          fam[k] = v;
          rec(k + 1);
        }
      };
      rec(0);
      if (!ok) return false;
    }
  }
  return true;
}

std::size_t brute_force_poset_count(std::size_t m) { return poset_classes(m).size(); }

std::size_t brute_force_sheaf_count(std::size_t n, std::size_t k) {
  std::size_t total = 0;
  for (std::size_t m = 1; m <= n; ++m) {
    for (const auto& r : poset_classes(m)) total += sheaf_classes(r, k);
  }
  return total;
}

}  // namespace flasque
