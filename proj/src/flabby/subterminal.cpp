#include "flasque/flabby/subterminal.hpp"

#include <algorithm>
#include <map>

#include "flasque/errors.hpp"

namespace flasque {

SubterminalPart SubterminalPart::restricted(Open v) const {
  Open s = support & v;
  return {v, s, restrict_section(value, s)};
}

std::vector<SubterminalPart> enumerate_subterminals(const SetSheaf& x, Open u) {
  std::vector<SubterminalPart> out;
  for (Open v : opens_within(x.site(), u)) {
    for (Section& s : sections(x, v)) out.push_back({u, v, std::move(s)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubterminalPart> enumerate_subterminals(const ModSheaf& x, Open u) {
  if (!x.has_finite_stalks()) throw UnsupportedError("subterminals of a sheaf with infinite stalks cannot be enumerated");
  return enumerate_subterminals(underlying_set_sheaf(x), u);
}

SubterminalObject subterminal_object(const SetSheaf& x) {
  const FinPoset& p = x.site();
  SubterminalObject out;
  out.parts.resize(p.size());
  std::vector<std::size_t> sizes(p.size());
  std::vector<std::vector<std::string>> labels(p.size());
  for (Point pt = 0; pt < p.size(); ++pt) {
    out.parts[pt] = enumerate_subterminals(x, p.minimal_open(pt));
    sizes[pt] = out.parts[pt].size();
    for (const auto& k : out.parts[pt]) {
      std::string s = "{";
      bool first = true;
      for (Point y : k.support.points()) {
        s += (first ? "" : ",") + p.name(y) + "=" + x.label(y, k.value[y]);
        first = false;
      }
      labels[pt].push_back(s + "}");
    }
  }
  auto index_of = [&](Point pt, const SubterminalPart& k) {
    auto it = std::lower_bound(out.parts[pt].begin(), out.parts[pt].end(), k);
    return static_cast<std::size_t>(it - out.parts[pt].begin());
  };
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (const auto& [a, b] : p.hasse_edges()) {
    SetMap m;
    for (const auto& k : out.parts[a]) m.push_back(index_of(b, k.restricted(p.minimal_open(b))));
    maps[{a, b}] = m;
  }
  out.sheaf = SetSheaf(x.site_ptr(), sizes, maps, labels);
  std::vector<SetMap> single(p.size());
  for (Point pt = 0; pt < p.size(); ++pt) {
    const Open u = p.minimal_open(pt);
    for (std::size_t s = 0; s < x.stalk_size(pt); ++s) {
      Section sec(p.size(), kUndefined);
      for (Point y : u.points()) sec[y] = x.apply(pt, y, s);
      single[pt].push_back(index_of(pt, {u, u, sec}));
    }
  }
  out.singleton = {x, out.sheaf, single};
  out.singleton.validate();
  return out;
}

GenericSubterminal generic_subterminal(const SetSheaf& x, const SubterminalObject& p) {
  GenericSubterminal g;
  g.members.resize(x.site().size());
  for (Point pt = 0; pt < x.site().size(); ++pt) {
    for (std::size_t k = 0; k < p.parts[pt].size(); ++k) {
      const auto& part = p.parts[pt][k];
      if (part.support.contains(pt)) g.members[pt].emplace_back(part.value[pt], k);
    }
  }
  return g;
}

}  // namespace flasque
