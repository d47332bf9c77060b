#include "flasque/flabby/flabby.hpp"

#include <algorithm>
#include <set>

#include "flasque/errors.hpp"

namespace flasque {

std::string Counterexample::describe(const FinPoset& p) const {
  std::string s = "U = " + flasque::describe(p, open) + ", s = {";
  for (std::size_t i = 0; i < section.size(); ++i) {
    s += (i ? ", " : "") + p.name(section[i].first) + ": " + section[i].second;
  }
  s += "}";
  if (point) s += ", p = " + p.name(*point);
  return s;
}

namespace {

Counterexample set_counterexample(const SetSheaf& f, Open u, const Section& s, std::optional<Point> p) {
  Counterexample c{u, {}, p};
  for (Point x : u.points()) c.section.emplace_back(x, f.label(x, s[x]));
  return c;
}

std::string vector_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

Counterexample mod_counterexample(const SectionModule& sm, const IntVector& coords, std::optional<Point> p) {
  Counterexample c{sm.domain, {}, p};
  for (Point x : sm.points) c.section.emplace_back(x, vector_string(sm.value(coords, x)));
  return c;
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

// First generator of `to` outside the image of `r`, if any.
std::optional<IntVector> non_surjective_witness(const IntMatrix& r, const SectionModule& to) {
  if (is_surjective(r, to.module)) return std::nullopt;
  for (std::size_t i = 0; i < to.module.generators(); ++i) {
    IntVector e = unit(to.module.generators(), i);
    if (!preimage(r, to.module, e)) return e;
  }
  return std::nullopt;
}

FlabbyVerdict mod_extends_to_global(const ModSheaf& f, const std::vector<Open>& opens) {
  SectionModule g = global_sections(f);
  for (Open u : opens) {
    SectionModule s = sections(f, u);
    if (auto w = non_surjective_witness(restriction(g, s), s)) return {false, mod_counterexample(s, *w, std::nullopt)};
  }
  return {};
}

}  // namespace

FlabbyVerdict check_flabby_traditional(const SetSheaf& f) {
  const FinPoset& p = f.site();
  std::vector<Section> global = global_sections(f);
  for (Open u : all_opens(p)) {
    std::set<Section> restricted;
    for (const auto& g : global) restricted.insert(restrict_section(g, u));
    for (const auto& s : sections(f, u)) {
      if (!restricted.count(s)) return {false, set_counterexample(f, u, s, std::nullopt)};
    }
  }
  return {};
}

FlabbyVerdict check_flabby_traditional(const ModSheaf& f) { return mod_extends_to_global(f, all_opens(f.site())); }

FlabbyVerdict check_flabby_local(const SetSheaf& f) {
  const FinPoset& p = f.site();
  for (Open u : all_opens(p)) {
    for (const auto& s : sections(f, u)) {
      for (Point pt = 0; pt < p.size(); ++pt) {
        if (u.contains(pt)) continue;
        if (!extend_section(f, u, s, u | p.minimal_open(pt))) return {false, set_counterexample(f, u, s, pt)};
      }
    }
  }
  return {};
}

FlabbyVerdict check_flabby_local(const ModSheaf& f) {
  const FinPoset& p = f.site();
  for (Open u : all_opens(p)) {
    SectionModule s = sections(f, u);
    for (Point pt = 0; pt < p.size(); ++pt) {
      if (u.contains(pt)) continue;
      SectionModule w = sections(f, u | p.minimal_open(pt));
      if (auto wit = non_surjective_witness(restriction(w, s), s)) return {false, mod_counterexample(s, *wit, pt)};
    }
  }
  return {};
}

FlabbyVerdict check_strongly_flabby(const SetSheaf& f) {
  auto cat = share(FinCategory::opposite_of(f.site()));
  PresheafFlabbyVerdict v = check_strongly_flabby(to_presheaf(f, cat));
  if (v.flabby) return {};
  Open u(v.subterminal);
  Section s(f.site().size(), kUndefined);
  for (Point x : u.points()) s[x] = v.family[x];
  return {false, set_counterexample(f, u, s, std::nullopt)};
}

FlabbyVerdict check_strongly_flabby(const ModSheaf& f) {
  auto cat = FinCategory::opposite_of(f.site());
  std::vector<Open> opens;
  for (std::uint64_t s : subterminals_of_one(cat)) opens.emplace_back(s);
  return mod_extends_to_global(f, opens);
}

bool is_flabby_traditional(const SetSheaf& f) { return check_flabby_traditional(f).flabby; }
bool is_flabby_traditional(const ModSheaf& f) { return check_flabby_traditional(f).flabby; }
bool is_flabby_local(const SetSheaf& f) { return check_flabby_local(f).flabby; }
bool is_flabby_local(const ModSheaf& f) { return check_flabby_local(f).flabby; }
bool is_strongly_flabby(const SetSheaf& f) { return check_strongly_flabby(f).flabby; }
bool is_strongly_flabby(const ModSheaf& f) { return check_strongly_flabby(f).flabby; }

PresheafFlabbyVerdict check_strongly_flabby(const SetPresheaf& f) {
  std::vector<Family> global = presheaf_global_sections(f);
  for (std::uint64_t s : subterminals_of_one(f.category())) {
    std::set<Family> restricted;
    for (const auto& g : global) {
      Family r(g.size(), kUndefined);
      for (Object o = 0; o < g.size(); ++o) {
        if ((s >> o) & 1U) r[o] = g[o];
      }
      restricted.insert(r);
    }
    for (const auto& fam : families(f, s)) {
      if (!restricted.count(fam)) return {false, s, fam};
    }
  }
  return {};
}

bool is_strongly_flabby(const SetPresheaf& f) { return check_strongly_flabby(f).flabby; }

FlabbyVerdict check_preimage_flabby(const ModMorphism& p, const IntVector& s) {
  const ModSheaf& m = p.source;
  const ModSheaf& mpp = p.target;
  SectionModule mx = global_sections(m);
  SectionModule qx = global_sections(mpp);
  IntMatrix px = sections_map(p, mx, qx);
  auto v0 = preimage(px, qx.module, s);
  if (!v0) {
    SectionModule empty = sections(m, Open());
    return {false, mod_counterexample(empty, IntVector{}, std::nullopt)};
  }
  KernelResult kx = kernel(px, mx.module, qx.module);
  for (Open u : all_opens(m.site())) {
    SectionModule mu = sections(m, u);
    SectionModule qu = sections(mpp, u);
    IntMatrix pu = sections_map(p, mu, qu);
    IntMatrix r = restriction(mx, mu);
    KernelResult ku = kernel(pu, mu.module, qu.module);
    IntMatrix reach = r * kx.inclusion;
    for (std::size_t c = 0; c < ku.inclusion.cols(); ++c) {
      IntVector k = ku.inclusion.column(c);
      if (!preimage(reach, mu.module, k)) {
        return {false, mod_counterexample(mu, r * *v0 + k, std::nullopt)};
      }
    }
  }
  return {};
}

}  // namespace flasque
