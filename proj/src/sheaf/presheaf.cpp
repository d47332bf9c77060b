#include "flasque/sheaf/presheaf.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "flasque/errors.hpp"

namespace flasque {

SetPresheaf::SetPresheaf(CategoryPtr c, std::vector<std::size_t> sizes, std::vector<SetMap> action,
                         std::vector<std::vector<std::string>> labels)
    : cat_(std::move(c)), sizes_(std::move(sizes)), action_(std::move(action)), labels_(std::move(labels)) {
  const FinCategory& cat = *cat_;
  if (sizes_.size() != cat.object_count()) throw InputError("one set per object required");
  if (action_.size() != cat.arrow_count()) throw InputError("one action per arrow required");
  if (labels_.empty()) {
    labels_.resize(sizes_.size());
    for (Object o = 0; o < sizes_.size(); ++o) {
      for (std::size_t s = 0; s < sizes_[o]; ++s) labels_[o].push_back(std::to_string(s));
    }
  }
  for (Arrow a = 0; a < cat.arrow_count(); ++a) {
    const auto& ad = cat.arrow(a);
    if (action_[a].size() != sizes_[ad.dst]) throw InputError("action of " + ad.name + " has wrong domain size");
    for (std::size_t v : action_[a]) {
      if (v >= sizes_[ad.src]) throw InputError("action of " + ad.name + " leaves its codomain");
    }
  }
  for (Object o = 0; o < cat.object_count(); ++o) {
    const SetMap& id = action_[cat.identity(o)];
    for (std::size_t s = 0; s < id.size(); ++s) {
      if (id[s] != s) throw InputError("identity at " + cat.object_name(o) + " acts nontrivially");
    }
  }
  for (Arrow g = 0; g < cat.arrow_count(); ++g) {
    for (Arrow f = 0; f < cat.arrow_count(); ++f) {
      if (cat.arrow(g).src != cat.arrow(f).dst) continue;
      auto gf = cat.compose(g, f);
      if (!gf) throw InputError("category lacks a composite");
      for (std::size_t s = 0; s < sizes_[cat.arrow(g).dst]; ++s) {
        if (action_[*gf][s] != action_[f][action_[g][s]]) {
          throw InputError("presheaf functoriality fails at " + cat.arrow(g).name + " o " + cat.arrow(f).name);
        }
      }
    }
  }
}

SetPresheaf terminal_presheaf(const CategoryPtr& c) {
  std::vector<SetMap> action(c->arrow_count(), SetMap{0});
  return SetPresheaf(c, std::vector<std::size_t>(c->object_count(), 1), action);
}

SetPresheaf regular_representation(const CategoryPtr& c) {
  if (c->object_count() != 1) throw InputError("regular representation needs a one-object category");
  const std::size_t n = c->arrow_count();
  std::vector<SetMap> action(n, SetMap(n));
  std::vector<std::vector<std::string>> labels(1);
  for (Arrow g = 0; g < n; ++g) {
    labels[0].push_back(c->arrow(g).name);
    for (Arrow x = 0; x < n; ++x) action[g][x] = *c->compose(x, g);
  }
  return SetPresheaf(c, {n}, action, labels);
}

SetPresheaf to_presheaf(const SetSheaf& f, const CategoryPtr& opposite) {
  const FinPoset& p = f.site();
  const FinCategory& c = *opposite;
  if (c.object_count() != p.size()) throw InputError("category does not match the poset");
  std::vector<SetMap> action(c.arrow_count());
  for (Arrow a = 0; a < c.arrow_count(); ++a) {
    // Arrow y -> x exists for x <= y; F acts F_x -> F_y.
    action[a] = f.comp(c.arrow(a).dst, c.arrow(a).src);
  }
  return SetPresheaf(opposite, f.sizes(), action, f.labels());
}

std::vector<std::uint64_t> subterminals_of_one(const FinCategory& c) {
  const std::size_t n = c.object_count();
  if (n > 20) throw BoundError("too many objects to enumerate subterminals");
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool closed = true;
    for (Arrow a = 0; a < c.arrow_count() && closed; ++a) {
      if (((s >> c.arrow(a).dst) & 1U) && !((s >> c.arrow(a).src) & 1U)) closed = false;
    }
    if (closed) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return a < b;
  });
  return out;
}

std::vector<Family> families(const SetPresheaf& f, std::uint64_t s) {
  const FinCategory& c = f.category();
  std::vector<Object> objs;
  for (Object o = 0; o < c.object_count(); ++o) {
    if ((s >> o) & 1U) objs.push_back(o);
  }
  std::vector<Family> out;
  Family fam(c.object_count(), kUndefined);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == objs.size()) {
      out.push_back(fam);
      return;
    }
    const Object o = objs[i];
    for (std::size_t v = 0; v < f.size(o); ++v) {
      bool ok = true;
      // Check arrows between o and already assigned objects (including o itself).
      for (Arrow a = 0; a < c.arrow_count() && ok; ++a) {
        const Object src = c.arrow(a).src;
        const Object dst = c.arrow(a).dst;
        const std::size_t vs = src == o ? v : fam[src];
        const std::size_t vd = dst == o ? v : fam[dst];
        if ((src != o && dst != o) || vs == kUndefined || vd == kUndefined) continue;
        if (f.act(a, vd) != vs) ok = false;
      }
      if (!ok) continue;
      fam[o] = v;
      rec(i + 1);
      fam[o] = kUndefined;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Family> presheaf_global_sections(const SetPresheaf& f) {
  const std::size_t n = f.category().object_count();
  return families(f, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

}  // namespace flasque
