#include "flasque/flabby/envelope.hpp"

#include <algorithm>
#include <map>

#include "flasque/errors.hpp"

namespace flasque {

namespace {

bool is_zero_part(const SubterminalPart& k) {
  for (Point y : k.support.points()) {
    if (k.value[y] != 0) return false;
  }
  return true;
}

std::string part_text(const SetSheaf& x, const SubterminalPart& k) {
  const FinPoset& p = x.site();
  std::string s = "{";
  bool first = true;
  for (Point y : k.support.points()) {
    s += (first ? "" : ",") + p.name(y) + "=" + x.label(y, k.value[y]);
    first = false;
  }
  return s + "}";
}

}  // namespace

Envelope candidate_envelope(const ModSheaf& m) {
  if (!m.has_finite_stalks()) throw UnsupportedError("the candidate envelope needs finite stalks");
  const FinPoset& ps = m.site();
  const std::size_t n = ps.size();
  SetSheaf x = underlying_set_sheaf(m);
  Envelope env;
  env.parts = subterminal_object(x);
  env.class_of.resize(n);
  std::vector<std::size_t> sizes(n);
  std::vector<std::vector<std::string>> labels(n);
  for (Point pt = 0; pt < n; ++pt) {
    const auto& parts = env.parts.parts[pt];
    labels[pt].push_back("[0]");
    std::size_t next = 1;
    for (const auto& k : parts) {
      if (is_zero_part(k)) {
        env.class_of[pt].push_back(0);
      } else {
        env.class_of[pt].push_back(next++);
        labels[pt].push_back("[" + part_text(x, k) + "]");
      }
    }
    sizes[pt] = next;
  }
  auto index_of = [&](Point pt, const SubterminalPart& k) {
    const auto& parts = env.parts.parts[pt];
    return static_cast<std::size_t>(std::lower_bound(parts.begin(), parts.end(), k) - parts.begin());
  };
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (const auto& [a, b] : ps.hasse_edges()) {
    SetMap map(sizes[a], kUndefined);
    const auto& parts = env.parts.parts[a];
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const std::size_t target = env.class_of[b][index_of(b, parts[k].restricted(ps.minimal_open(b)))];
      map[env.class_of[a][k]] = target;
    }
    maps[{a, b}] = map;
  }
  env.sheaf = SetSheaf(m.site_ptr(), sizes, maps, labels);
  std::vector<SetMap> j(n);
  for (Point pt = 0; pt < n; ++pt) {
    for (std::size_t k : env.parts.singleton.components[pt]) j[pt].push_back(env.class_of[pt][k]);
  }
  env.embedding = {x, env.sheaf, j};
  env.embedding.validate();
  env.embedding_mono = is_mono(env.embedding);

  // Addition on parts: support is the intersection, values add.
  for (Point pt = 0; pt < n && env.addition_violation.empty(); ++pt) {
    const auto& parts = env.parts.parts[pt];
    const Open u = ps.minimal_open(pt);
    std::vector<ElementCoder> coders;
    for (Point y = 0; y < n; ++y) coders.emplace_back(m.stalk(y));
    auto add = [&](const SubterminalPart& k, const SubterminalPart& l) {
      SubterminalPart s{u, k.support & l.support, Section(n, kUndefined)};
      for (Point y : s.support.points()) {
        const auto& st = m.stalk(y);
        s.value[y] = coders[y].index(st.reduce(coders[y].element(k.value[y]) + coders[y].element(l.value[y])));
      }
      return index_of(pt, s);
    };
    for (std::size_t k1 = 0; k1 < parts.size() && env.addition_violation.empty(); ++k1) {
      for (std::size_t k2 = k1 + 1; k2 < parts.size() && env.addition_violation.empty(); ++k2) {
        if (env.class_of[pt][k1] != env.class_of[pt][k2]) continue;
        for (std::size_t l = 0; l < parts.size(); ++l) {
          const std::size_t s1 = add(parts[k1], parts[l]), s2 = add(parts[k2], parts[l]);
          if (env.class_of[pt][s1] != env.class_of[pt][s2]) {
            env.addition_violation = "at stage " + ps.name(pt) + ": [" + part_text(x, parts[k1]) + "] = [" +
                                     part_text(x, parts[k2]) + "] but adding [" + part_text(x, parts[l]) +
                                     "] gives [" + part_text(x, parts[s1]) + "] and [" +
                                     part_text(x, parts[s2]) + "]";
            break;
          }
        }
      }
    }
  }
  env.traditional = check_flabby_traditional(env.sheaf);
  env.local = check_flabby_local(env.sheaf);
  return env;
}

}  // namespace flasque
