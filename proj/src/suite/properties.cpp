#include "flasque/suite/properties.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "flasque/corpus/corpus.hpp"
#include "flasque/corpus/enumerate.hpp"
#include "flasque/errors.hpp"
#include "flasque/flabby/envelope.hpp"
#include "flasque/flabby/field_sheaf.hpp"
#include "flasque/flabby/flabby.hpp"
#include "flasque/flabby/godement.hpp"
#include "flasque/flabby/injective.hpp"
#include "flasque/homalg/derived.hpp"
#include "flasque/homalg/smith.hpp"
#include "flasque/internal/internal.hpp"
#include "flasque/io/json_io.hpp"
#include "flasque/suite/oracles.hpp"

namespace flasque {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Counts cases and keeps the first failure.
struct Tally {
  std::size_t cases = 0;
  std::string failure;

  bool ok() const { return failure.empty(); }
  template <class Describe>
  void check(bool cond, Describe&& describe) {
    ++cases;
    if (!cond && failure.empty()) failure = describe();
  }
};

std::string show(const SetSheaf& s) { return to_json(s).dump(); }
std::string show(const ModSheaf& s) { return to_json(s).dump(); }
std::string show(const FieldSheaf& s) { return show(to_mod_sheaf(s)); }
std::string show(const ShortExact& s) {
  return "M' = " + show(s.i.source) + ", M = " + show(s.i.target) + ", M'' = " + show(s.p.target);
}

std::vector<PosetPtr> posets_up_to(std::size_t n) {
  std::vector<PosetPtr> out;
  for (std::size_t m = 1; m <= n; ++m) {
    for (auto& p : posets_up_to_iso(m)) out.push_back(p);
  }
  return out;
}

std::vector<PosetPtr> named_posets() {
  std::vector<PosetPtr> out;
  for (const auto& n : corpus_poset_names()) out.push_back(corpus_poset(n));
  return out;
}

/// Enumerated posets followed by the named corpus sites.
std::vector<PosetPtr> all_sites(std::size_t n) {
  std::vector<PosetPtr> out = posets_up_to(n);
  for (auto& p : named_posets()) out.push_back(p);
  return out;
}

struct NamedMod {
  std::string name;
  ModSheaf sheaf;
};

std::vector<NamedMod> named_mod_sheaves(const PosetPtr& p) {
  std::vector<NamedMod> out;
  for (const auto& n : corpus_sheaf_names(*p)) {
    CorpusSheaf c = corpus_sheaf(p, n);
    if (c.mod) out.push_back({n, *c.mod});
  }
  return out;
}

std::vector<SetSheaf> named_set_sheaves(const PosetPtr& p) {
  std::vector<SetSheaf> out;
  for (const auto& n : corpus_sheaf_names(*p)) {
    CorpusSheaf c = corpus_sheaf(p, n);
    if (c.set) out.push_back(*c.set);
  }
  return out;
}

/// All named module sheaves on all named sites.
std::vector<NamedMod> module_corpus() {
  std::vector<NamedMod> out;
  for (const auto& pn : corpus_poset_names()) {
    for (auto& m : named_mod_sheaves(corpus_poset(pn))) out.push_back({pn + "/" + m.name, m.sheaf});
  }
  return out;
}

struct FieldCorpus {
  PosetPtr site;
  fp::Elem prime;
  std::vector<FieldSheaf> sheaves;
};

std::vector<FieldCorpus> field_corpus(std::size_t max_points, const std::vector<fp::Elem>& primes, std::size_t d) {
  std::vector<FieldCorpus> out;
  for (fp::Elem p : primes) {
    for (const auto& site : posets_up_to(max_points)) out.push_back({site, p, field_sheaves_up_to_iso(site, p, d)});
  }
  return out;
}

void for_each_ses(const PosetPtr& site, fp::Elem p, std::size_t d,
                  const std::function<void(const ShortExact&)>& visit) {
  for (const FieldSheaf& b : field_sheaves_up_to_iso(site, p, d)) {
    for (const FieldSubsheaf& a : all_subsheaves(b)) visit(field_short_exact(b, a));
  }
}

bool sections_epi(const ModMorphism& m, Open u) {
  SectionModule from = sections(m.source, u);
  SectionModule to = sections(m.target, u);
  return is_surjective(sections_map(m, from, to), to.module);
}

bool sections_left_exact(const ShortExact& s, Open u) {
  SectionModule a = sections(s.i.source, u);
  SectionModule b = sections(s.i.target, u);
  SectionModule c = sections(s.p.target, u);
  IntMatrix gi = sections_map(s.i, a, b);
  IntMatrix gp = sections_map(s.p, b, c);
  if (!is_injective(gi, a.module, b.module)) return false;
  try {
    return homology_at(gi, b.module, gp, c.module).is_zero();
  } catch (const InputError&) {
    return false;
  }
}

/// The SES battery, evaluated once per short exact sequence.
struct SesBattery {
  std::size_t sequences = 0;
  Tally left_exact;       // Γ(U, -) left exact
  Tally sections_exact;   // flabby M' => exact on every U
  Tally global_exact;     // exact-as-presheaves: Γ(M) -> Γ(M'') onto
  Tally preimages;        // preimage subsheaves flabby
  Tally closure;          // M', M'' flabby => M flabby
  Tally quotient;         // M', M flabby => M'' flabby
};

void run_battery(SesBattery& b, const ShortExact& s) {
  ++b.sequences;
  const FinPoset& site = s.i.source.site();
  const bool f1 = is_flabby_traditional(s.i.source);
  const bool f2 = is_flabby_traditional(s.i.target);
  const bool f3 = is_flabby_traditional(s.p.target);
  const std::vector<Open> opens = all_opens(site);
  for (Open u : opens) {
    b.left_exact.check(sections_left_exact(s, u), [&] { return "U = " + describe(site, u) + ": " + show(s); });
  }
  if (f1) {
    for (Open u : opens) {
      b.sections_exact.check(sections_epi(s.p, u), [&] { return "U = " + describe(site, u) + ": " + show(s); });
    }
    b.global_exact.check(sections_epi(s.p, site.whole()), [&] { return show(s); });
    SectionModule g = global_sections(s.p.target);
    ElementCoder coder(g.module);
    for (std::size_t k = 0; k < coder.size(); ++k) {
      const IntVector sec = coder.element(k);
      FlabbyVerdict v = check_preimage_flabby(s.p, sec);
      b.preimages.check(v.flabby, [&] {
        return "s = " + to_string(sec) + ": " + show(s) +
               (v.counterexample ? " at " + v.counterexample->describe(site) : std::string());
      });
    }
  }
  if (f1 && f3) b.closure.check(f2, [&] { return show(s); });
  if (f1 && f2) b.quotient.check(f3, [&] { return show(s); });
}

/// Battery over Z/2 on the given sites with stalk dimension <= d, cached per run.
const SesBattery& ses_battery(const std::vector<PosetPtr>& sites, std::size_t d, const std::string& key) {
  static std::map<std::string, std::shared_ptr<SesBattery>> cache;
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto b = std::make_shared<SesBattery>();
  for (const auto& site : sites) for_each_ses(site, 2, d, [&](const ShortExact& s) { run_battery(*b, s); });
  cache[key] = b;
  return *b;
}

PropertyResult from_tally(const Tally& t, std::string note = {}) {
  PropertyResult r;
  r.passed = t.ok();
  r.cases = t.cases;
  r.counterexample = t.failure;
  r.note = std::move(note);
  return r;
}

/// Is (f_* e)_q onto for every q?
bool pushforward_preserves_epi(const MonotoneMap& f, const ModMorphism& e) {
  for (Point q = 0; q < f.target().size(); ++q) {
    if (!sections_epi(e, f.preimage(f.target().minimal_open(q)))) return false;
  }
  return true;
}

/// Epimorphisms used to probe whether f_* preserves epis: the cokernel
/// projections of Godement embeddings of the named module sheaves, and for
/// small sites the quotient maps of all SES over Z/2 with stalk dimension <= 1.
std::vector<ModMorphism> probe_epis(const PosetPtr& site) {
  std::vector<ModMorphism> out;
  for (const auto& m : named_mod_sheaves(site)) {
    ModGodement g = godement_embed(m.sheaf);
    out.push_back(cokernel_sheaf(g.embedding).projection);
  }
  if (site->size() <= 4) for_each_ses(site, 2, 1, [&](const ShortExact& s) { out.push_back(s.p); });
  return out;
}

/// Set sheaves used on a named site: the named ones, and for sites with at
/// most four points every set sheaf with stalks <= 2 up to iso.
std::vector<SetSheaf> set_sheaves_on(const PosetPtr& site) {
  std::vector<SetSheaf> out = named_set_sheaves(site);
  if (site->size() <= 4) {
    for (auto& s : set_sheaves_up_to_iso(site, 2)) out.push_back(std::move(s));
  }
  return out;
}

std::string verdict_text(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- site

PropertyResult prop_minimal_open(const SuiteOptions& o) {
  Tally t;
  for (const auto& p : all_sites(o.max_points)) {
    for (Point x = 0; x < p->size(); ++x) {
      Open u = minimal_open(*p, x);
      t.check(p->is_open(u), [&] { return "U_" + p->name(x) + " is not open"; });
      for (Point y = 0; y < p->size(); ++y) {
        t.check(u.contains(y) == p->le(x, y),
                [&] { return p->name(y) + " in U_" + p->name(x) + " disagrees with the order"; });
      }
    }
  }
  return from_tally(t);
}

PropertyResult prop_topology(const SuiteOptions& o) {
  Tally t;
  for (const auto& p : all_sites(o.max_points)) {
    std::vector<Open> opens = all_opens(*p);
    std::set<std::uint64_t> masks;
    for (Open u : opens) masks.insert(u.bits());
    // Every up-set by brute force over all subsets.
    std::size_t upsets = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << p->size()); ++m) {
      bool up = true;
      for (Point x = 0; x < p->size() && up; ++x) {
        if (!((m >> x) & 1U)) continue;
        for (Point y = 0; y < p->size(); ++y) {
          if (p->le(x, y) && !((m >> y) & 1U)) up = false;
        }
      }
      upsets += up;
    }
    t.check(upsets == opens.size() && masks.size() == opens.size(),
            [&] { return "opens of " + to_json(*p).dump() + " miscounted"; });
    t.check(masks.count(0) && masks.count(p->whole().bits()),
            [&] { return "empty set or whole space missing"; });
    for (Open a : opens) {
      for (Open b : opens) {
        t.check(masks.count((a | b).bits()) && masks.count((a & b).bits()),
                [&] { return describe(*p, a) + " and " + describe(*p, b) + " not closed under union/intersection"; });
      }
    }
  }
  return from_tally(t);
}

PropertyResult prop_preimages(const SuiteOptions& o) {
  Tally t;
  std::vector<MonotoneMap> maps;
  auto small = posets_up_to(std::min<std::size_t>(o.max_points, 3));
  for (const auto& s : small) {
    for (const auto& q : small) {
      for (auto& f : all_monotone_maps(s, q)) maps.push_back(std::move(f));
    }
  }
  for (auto& nm : corpus_maps()) maps.push_back(nm.map);
  for (const auto& f : maps) {
    for (Point x = 0; x < f.source().size(); ++x) {
      for (Point y = 0; y < f.source().size(); ++y) {
        if (f.source().le(x, y)) {
          t.check(f.target().le(f(x), f(y)), [&] { return to_json(f).dump() + " not monotone"; });
        }
      }
    }
    for (Open v : all_opens(f.target())) {
      t.check(f.source().is_open(f.preimage(v)),
              [&] { return to_json(f).dump() + ": preimage of " + describe(f.target(), v) + " not open"; });
    }
  }
  return from_tally(t);
}

PropertyResult prop_slice_terminal(const SuiteOptions& o) {
  Tally t;
  for (const auto& p : all_sites(o.max_points)) {
    FinPoset s = slice_site(*p, terminal_sheaf(p));
    t.check(s.size() == p->size() && canonical_form(s) == canonical_form(*p),
            [&] { return "slice of " + to_json(*p).dump() + " over the terminal sheaf"; });
  }
  return from_tally(t);
}

PropertyResult prop_categories(const SuiteOptions& o) {
  Tally t;
  for (const auto& p : all_sites(o.max_points)) {
    FinCategory c = FinCategory::opposite_of(*p);
    auto v = check_category(c);
    t.check(v.empty(), [&] { return "opposite of " + to_json(*p).dump() + ": " + v.front(); });
  }
  auto bg = check_category(*bg_z2());
  t.check(bg.empty(), [&] { return "BG: " + bg.front(); });
  auto d = check_category(FinCategory::discrete({"a", "b", "c"}));
  t.check(d.empty(), [&] { return "discrete: " + d.front(); });
  return from_tally(t);
}

// ---------------------------------------------------------------- sheafcore

PropertyResult prop_sheaf_condition(const SuiteOptions& o) {
  Tally t;
  for (const auto& inst : enumerate_corpus(std::min<std::size_t>(o.max_points, 3), std::min<std::size_t>(o.max_stalk, 2))) {
    const SetSheaf& f = inst.sheaf;
    const FinPoset& p = f.site();
    std::vector<Open> opens = all_opens(p);
    for (Open u : opens) {
      for (Open v : opens) {
        const Open w = u & v;
        std::size_t pairs = 0;
        auto su = sections(f, u);
        auto sv = sections(f, v);
        for (const auto& a : su) {
          for (const auto& b : sv) pairs += restrict_section(a, w) == restrict_section(b, w);
        }
        std::set<std::pair<Section, Section>> images;
        for (const auto& s : sections(f, u | v)) images.insert({restrict_section(s, u), restrict_section(s, v)});
        t.check(images.size() == pairs && sections(f, u | v).size() == pairs, [&] {
          return show(f) + ": U = " + describe(p, u) + ", V = " + describe(p, v);
        });
      }
    }
  }
  for (const auto& m : module_corpus()) {
    const ModSheaf& f = m.sheaf;
    const FinPoset& p = f.site();
    std::vector<Open> opens = all_opens(p);
    for (Open u : opens) {
      for (Open v : opens) {
        SectionModule a = sections(f, u), b = sections(f, v), c = sections(f, u & v), uv = sections(f, u | v);
        // F(U ∪ V) -> F(U) ⊕ F(V) -> F(U ∩ V), the second map being the difference of restrictions.
        IntMatrix ra = restriction(a, c), rb = restriction(b, c);
        IntMatrix diff(c.module.generators(), a.module.generators() + b.module.generators());
        diff.paste(0, 0, ra);
        IntMatrix neg = rb;
        for (std::size_t i = 0; i < neg.rows(); ++i) {
          for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
        }
        diff.paste(0, a.module.generators(), neg);
        IntMatrix in = vstack(restriction(uv, a), restriction(uv, b));
        FPModule sum = FPModule::direct_sum({a.module, b.module});
        bool ok = is_injective(in, uv.module, sum);
        if (ok) {
          try {
            ok = homology_at(in, sum, diff, c.module).is_zero();
          } catch (const InputError&) {
            ok = false;
          }
        }
        t.check(ok, [&] { return m.name + ": U = " + describe(p, u) + ", V = " + describe(p, v); });
      }
    }
  }
  return from_tally(t);
}

PropertyResult prop_pushforward_sections(const SuiteOptions&) {
  Tally t;
  for (const auto& nm : corpus_maps()) {
    const PosetPtr& s = nm.map.source_ptr();
    for (const auto& f : set_sheaves_on(s)) {
      t.check(global_sections(pushforward(nm.map, f)).size() == global_sections(f).size(),
              [&] { return nm.name + ": " + show(f); });
    }
    for (const auto& m : named_mod_sheaves(s)) {
      const std::string a = global_sections(pushforward(nm.map, m.sheaf)).module.describe();
      const std::string b = global_sections(m.sheaf).module.describe();
      t.check(a == b, [&] { return nm.name + ", " + m.name + ": " + a + " vs " + b; });
    }
  }
  return from_tally(t);
}

std::vector<SetMorphism> all_set_morphisms(const SetSheaf& f, const SetSheaf& g) {
  const FinPoset& p = f.site();
  std::vector<SetMorphism> out;
  std::vector<SetMap> comp(p.size());
  std::function<void(Point)> rec = [&](Point x) {
    if (x == p.size()) {
      for (const auto& [a, b] : p.hasse_edges()) {
        for (std::size_t s = 0; s < f.stalk_size(a); ++s) {
          if (g.apply(a, b, comp[a][s]) != comp[b][f.apply(a, b, s)]) return;
        }
      }
      out.push_back({f, g, comp});
      return;
    }
    const std::size_t n = f.stalk_size(x), m = g.stalk_size(x);
    if (n > 0 && m == 0) return;
    comp[x].assign(n, 0);
    std::function<void(std::size_t)> fill = [&](std::size_t i) {
      if (i == n) {
        rec(x + 1);
        return;
      }
      for (std::size_t v = 0; v < m; ++v) {
        comp[x][i] = v;
        fill(i + 1);
      }
    };
    fill(0);
  };
  rec(0);
  return out;
}

PropertyResult prop_pullback_mono_epi(const SuiteOptions& o) {
  Tally t;
  auto sites = posets_up_to(std::min<std::size_t>(o.max_points, 2));
  auto sources = posets_up_to(std::min<std::size_t>(o.max_points, 3));
  for (const auto& site : sites) {
    auto sheaves = set_sheaves_up_to_iso(site, 2);
    std::vector<MonotoneMap> maps;
    for (const auto& s : sources) {
      for (auto& f : all_monotone_maps(s, site)) maps.push_back(std::move(f));
    }
    for (const auto& a : sheaves) {
      for (const auto& b : sheaves) {
        for (const auto& m : all_set_morphisms(a, b)) {
          const bool mono = is_mono(m), epi = is_epi(m);
          for (const auto& f : maps) {
            SetMorphism pm = pullback(f, m);
            t.check((!mono || is_mono(pm)) && (!epi || is_epi(pm)),
                    [&] { return to_json(f).dump() + " on a morphism " + show(a) + " -> " + show(b); });
          }
        }
      }
    }
  }
  // Module flavor: the maps of every SES over Z/2 on Sierpiński pulled back along maps from small posets.
  PosetPtr sier = corpus_poset("sierpinski");
  std::vector<MonotoneMap> maps;
  for (const auto& s : sources) {
    for (auto& f : all_monotone_maps(s, sier)) maps.push_back(std::move(f));
  }
  for_each_ses(sier, 2, 2, [&](const ShortExact& s) {
    for (const auto& f : maps) {
      t.check(is_mono(pullback(f, s.i)) && is_epi(pullback(f, s.p)),
              [&] { return to_json(f).dump() + ": " + show(s); });
    }
  });
  return from_tally(t);
}

PropertyResult prop_left_exact(const SuiteOptions& o) {
  const auto& b = ses_battery(posets_up_to(std::min<std::size_t>(o.max_points, 3)), o.max_dim,
                              "small/" + std::to_string(o.max_points) + "/" + std::to_string(o.max_dim));
  return from_tally(b.left_exact, std::to_string(b.sequences) + " sequences over Z/2");
}

// ---------------------------------------------------------------- flabby

PropertyResult prop_injective_flabby(const SuiteOptions& o) {
  Tally t;
  std::size_t injective = 0;
  auto run = [&](const std::vector<FieldCorpus>& corpus) {
    for (const auto& fc : corpus) {
      for (const auto& i : fc.sheaves) {
        if (!is_injective_field(i)) continue;
        ++injective;
        t.check(is_flabby_traditional(to_mod_sheaf(i)), [&] { return show(i); });
      }
    }
  };
  run(field_corpus(std::min<std::size_t>(o.max_points, 4), {2}, o.max_dim));
  run(field_corpus(std::min<std::size_t>(o.max_points, 3), {3}, o.max_dim));
  return from_tally(t, std::to_string(injective) + " injective sheaves");
}

PropertyResult prop_products(const SuiteOptions& o) {
  Tally t;
  for (const auto& p : all_sites(o.max_points)) {
    t.check(is_flabby_traditional(terminal_sheaf(p)), [&] { return "terminal on " + to_json(*p).dump(); });
  }
  for (const auto& p : posets_up_to(std::min<std::size_t>(o.max_points, 3))) {
    std::vector<SetSheaf> flabby;
    for (auto& s : set_sheaves_up_to_iso(p, 2)) {
      if (is_flabby_traditional(s)) flabby.push_back(std::move(s));
    }
    for (const auto& a : flabby) {
      for (const auto& b : flabby) {
        t.check(is_flabby_traditional(product(a, b)), [&] { return show(a) + " x " + show(b); });
      }
    }
  }
  for (const auto& fc : field_corpus(std::min<std::size_t>(o.max_points, 3), {2}, 1)) {
    std::vector<ModSheaf> flabby;
    for (const auto& f : fc.sheaves) {
      ModSheaf m = to_mod_sheaf(f);
      if (is_flabby_traditional(m)) flabby.push_back(m);
    }
    for (const auto& a : flabby) {
      for (const auto& b : flabby) {
        t.check(is_flabby_traditional(direct_sum(a, b)), [&] { return show(a) + " (+) " + show(b); });
      }
    }
  }
  return from_tally(t);
}

Tally godement_tally(std::size_t max_points, std::size_t max_stalk, std::size_t field_points, std::size_t d) {
  Tally t;
  for (const auto& inst : enumerate_corpus(max_points, max_stalk)) {
    SetGodement g = godement_embed(inst.sheaf);
    t.check(is_mono(g.embedding) && is_flabby_traditional(g.sheaf), [&] { return show(inst.sheaf); });
  }
  auto mod_check = [&](const ModSheaf& m, const std::string& name) {
    ModGodement g = godement_embed(m);
    t.check(is_mono(g.embedding) && is_flabby_traditional(g.sheaf), [&] { return name; });
  };
  for (const auto& m : module_corpus()) mod_check(m.sheaf, m.name);
  for (const auto& fc : field_corpus(field_points, {2}, d)) {
    for (const auto& f : fc.sheaves) mod_check(to_mod_sheaf(f), show(f));
  }
  return t;
}

PropertyResult prop_godement(const SuiteOptions& o) {
  return from_tally(godement_tally(std::min<std::size_t>(o.max_points, 3), o.max_stalk,
                                   std::min<std::size_t>(o.max_points, 3), o.max_dim));
}

Tally hom_flabby_tally(std::size_t max_points, std::size_t d_i, std::size_t d_t) {
  Tally t;
  for (const auto& fc : field_corpus(max_points, {2}, d_i)) {
    std::vector<FieldSheaf> tests = d_t == d_i ? fc.sheaves : field_sheaves_up_to_iso(fc.site, 2, d_t);
    for (const auto& i : fc.sheaves) {
      if (!is_injective_field(i)) continue;
      for (const auto& tt : tests) {
        t.check(is_flabby_traditional(to_mod_sheaf(internal_hom(tt, i))),
                [&] { return "[T, I] with T = " + show(tt) + ", I = " + show(i); });
      }
    }
  }
  return t;
}

PropertyResult prop_hom_flabby(const SuiteOptions& o) {
  return from_tally(hom_flabby_tally(std::min<std::size_t>(o.max_points, 3), o.max_dim, o.max_dim));
}

const SesBattery& suite_battery(const SuiteOptions& o) {
  std::vector<PosetPtr> sites = posets_up_to(std::min<std::size_t>(o.max_points, 3));
  return ses_battery(sites, o.max_dim, "small/" + std::to_string(o.max_points) + "/" + std::to_string(o.max_dim));
}

PropertyResult prop_preimages_flabby(const SuiteOptions& o) {
  const auto& b = suite_battery(o);
  return from_tally(b.preimages, std::to_string(b.sequences) + " sequences over Z/2");
}

PropertyResult prop_ses_closure(const SuiteOptions& o) {
  const auto& b = suite_battery(o);
  return from_tally(b.closure, std::to_string(b.sequences) + " sequences over Z/2");
}

PropertyResult prop_ses_quotient(const SuiteOptions& o) {
  const auto& b = suite_battery(o);
  return from_tally(b.quotient, "classical only; " + std::to_string(b.sequences) + " sequences over Z/2");
}

PropertyResult prop_exact_as_presheaves(const SuiteOptions& o) {
  const auto& b = suite_battery(o);
  return from_tally(b.global_exact, std::to_string(b.sequences) + " sequences over Z/2");
}

PropertyResult prop_pushforward_flabby_objects(const SuiteOptions&) {
  Tally t;
  std::size_t qualified = 0, maps = 0;
  std::map<std::string, std::vector<ModMorphism>> epis;
  for (const auto& nm : corpus_maps()) {
    ++maps;
    const PosetPtr& s = nm.map.source_ptr();
    std::string key = to_json(*s).dump();
    if (!epis.count(key)) epis[key] = probe_epis(s);
    bool preserves = true;
    for (const auto& e : epis[key]) {
      if (!pushforward_preserves_epi(nm.map, e)) {
        preserves = false;
        break;
      }
    }
    if (!preserves) continue;
    ++qualified;
    for (const auto& f : set_sheaves_on(s)) {
      if (!internal_flabby(f)) continue;
      t.check(internal_flabby(pushforward(nm.map, f)), [&] { return nm.name + ": " + show(f); });
    }
  }
  return from_tally(t, std::to_string(qualified) + " of " + std::to_string(maps) + " maps preserve the probe epis");
}

PropertyResult prop_pushforward_flabby(const SuiteOptions&) {
  Tally t;
  for (const auto& nm : corpus_maps()) {
    const PosetPtr& s = nm.map.source_ptr();
    for (const auto& f : set_sheaves_on(s)) {
      if (!is_flabby_traditional(f)) continue;
      t.check(is_flabby_traditional(pushforward(nm.map, f)), [&] { return nm.name + ": " + show(f); });
    }
    for (const auto& m : named_mod_sheaves(s)) {
      ModGodement g = godement_embed(m.sheaf);
      for (const ModSheaf* x : std::initializer_list<const ModSheaf*>{&m.sheaf, &g.sheaf}) {
        if (!is_flabby_traditional(*x)) continue;
        t.check(is_flabby_traditional(pushforward(nm.map, *x)), [&] { return nm.name + ": " + show(*x); });
      }
    }
  }
  return from_tally(t);
}

/// is_injective_field against the brute-force extension oracle and the
/// bounded internal family, on all iso classes of the given field corpus.
struct InjectivityComparison {
  Tally oracle;
  Tally internal;
  std::size_t injective = 0;
};

InjectivityComparison compare_injectivity(std::size_t max_points, const std::vector<fp::Elem>& primes, std::size_t d,
                                          bool with_oracle) {
  InjectivityComparison c;
  for (fp::Elem p : primes) {
    for (const auto& site : posets_up_to(max_points)) {
      MonoFamily fam = build_mono_family(site, p, d);
      for (const auto& i : field_sheaves_up_to_iso(site, p, d)) {
        const bool ext = is_injective_field(i);
        c.injective += ext;
        if (with_oracle) {
          const bool brute = injective_by_extension(i);
          c.oracle.check(ext == brute, [&] {
            return show(i) + ": Ext criterion " + verdict_text(ext) + ", extension search " + verdict_text(brute);
          });
        }
        FamilyReport r = internal_injective_family(i, fam);
        c.internal.check(ext == r.passed, [&] {
          return show(i) + ": external " + verdict_text(ext) + ", internal family " + verdict_text(r.passed) +
                 (r.witness ? " " + r.describe() : std::string());
        });
      }
    }
  }
  return c;
}

PropertyResult prop_injectivity_theorem(const SuiteOptions& o) {
  InjectivityComparison c = compare_injectivity(std::min<std::size_t>(o.max_points, 4), {2}, o.max_dim, false);
  return from_tally(c.internal, "family bound d = " + std::to_string(o.max_dim) + ", " +
                                    std::to_string(c.injective) + " injective");
}

PropertyResult prop_taboo(const SuiteOptions&) {
  Tally t;
  auto witness = [&](const SetSheaf& f) {
    const FinPoset& p = f.site();
    bool inhabited = !global_sections(f).empty();
    for (Point x = 0; x < p.size(); ++x) inhabited = inhabited && f.stalk_size(x) > 0;
    t.check(inhabited && !is_flabby_traditional(f) && !internal_flabby(f), [&] { return show(f); });
  };
  // {0} ∪ {1 | φ} with φ the truth value {p1}.
  PosetPtr s = corpus_poset("sierpinski");
  witness(SetSheaf(s, {1, 2}, {{{0, 1}, {0}}}, {{"0"}, {"0", "1"}}));
  witness(constant_sheaf(corpus_poset("pseudocircle"), 2));
  return from_tally(t);
}

// ---------------------------------------------------------------- internal

std::vector<FormulaPtr> monotonicity_formulas() {
  std::vector<FormulaPtr> out{flabby_formula("X")};
  for (const char* text : {"(exists (x X) true)", "(forall (x X) (forall (y X) (or (eq x y) (not (eq x y)))))",
                           "(not (not (exists (x X) true)))", "(exists (x X) (forall (y X) (eq x y)))",
                           "(forall (K (P1 X)) (or (exists (x X) (in x K)) (not (exists (z X) (in z K)))))"}) {
    out.push_back(parse_formula(text));
  }
  return out;
}

PropertyResult prop_monotone(const SuiteOptions& o) {
  Tally t;
  auto closed = monotonicity_formulas();
  FormulaPtr open = parse_formula("(forall (y X) (or (eq y s) (not (eq y s))))");
  for (const auto& inst : enumerate_corpus(std::min<std::size_t>(o.max_points, 3), std::min<std::size_t>(o.max_stalk, 2))) {
    Structure st(inst.site);
    st.add_object("X", inst.sheaf);
    const FinPoset& p = *inst.site;
    for (const auto& f : closed) {
      Forcing fc(st, f);
      for (Point x = 0; x < p.size(); ++x) {
        if (!fc.force(x)) continue;
        for (Point y = 0; y < p.size(); ++y) {
          if (p.le(x, y)) {
            t.check(fc.force(y), [&] { return to_sexpr(*f) + " forced at " + p.name(x) + " but not at " + p.name(y) +
                                              " for " + show(inst.sheaf); });
          }
        }
      }
    }
    Forcing fo(st, open, {{"s", TypeExpr{"X", false}}});
    for (Point x = 0; x < p.size(); ++x) {
      for (std::size_t s = 0; s < inst.sheaf.stalk_size(x); ++s) {
        if (!fo.force(x, {s})) continue;
        for (Point y = 0; y < p.size(); ++y) {
          if (p.le(x, y)) {
            t.check(fo.force(y, {inst.sheaf.apply(x, y, s)}), [&] { return to_sexpr(*open) + " for " + show(inst.sheaf); });
          }
        }
      }
    }
  }
  return from_tally(t);
}

PropertyResult prop_ipc(const SuiteOptions& o) {
  Tally t;
  for (const auto& p : all_sites(std::min<std::size_t>(o.max_points, 3))) {
    CategoryPtr c = share(FinCategory::opposite_of(*p));
    for (const auto& f : {subobject_classifier(p), constant_sheaf(p, 2)}) {
      std::string v = check_ipc_schedule(to_presheaf(f, c));
      t.check(v.empty(), [&] { return to_json(*p).dump() + ": " + v; });
    }
  }
  for (const char* g : {"regular", "terminal"}) {
    std::string v = check_ipc_schedule(bg_presheaf(g));
    t.check(v.empty(), [&] { return std::string("BG ") + g + ": " + v; });
  }
  return from_tally(t, "20 formulas per site and interpretation");
}

/// Traditional, local and internal flabbiness on one set sheaf.
template <class Describe>
void flabby_agreement(Tally& t, const SetSheaf& f, Describe&& d, std::size_t* flabby = nullptr) {
  const bool a = is_flabby_traditional(f);
  const bool b = is_flabby_local(f);
  const bool c = internal_flabby(f);
  if (flabby && a) ++*flabby;
  t.check(a == b && b == c, [&] {
    return d() + ": traditional " + verdict_text(a) + ", local " + verdict_text(b) + ", internal " + verdict_text(c);
  });
}

PropertyResult prop_flabby_agreement(const SuiteOptions& o) {
  Tally t;
  for (const auto& inst : enumerate_corpus(o.max_points, o.max_stalk)) {
    flabby_agreement(t, inst.sheaf, [&] { return show(inst.sheaf); });
  }
  for (const auto& p : named_posets()) {
    for (const auto& f : set_sheaves_on(p)) flabby_agreement(t, f, [&] { return show(f); });
    for (const auto& m : named_mod_sheaves(p)) {
      if (!m.sheaf.has_finite_stalks()) continue;
      const bool a = is_flabby_traditional(m.sheaf), b = is_flabby_local(m.sheaf), c = internal_flabby(m.sheaf);
      t.check(a == b && b == c, [&] { return m.name + " on " + to_json(*p).dump(); });
    }
  }
  return from_tally(t);
}

PropertyResult prop_slices(const SuiteOptions& o) {
  Tally t;
  for (const auto& p : posets_up_to(std::min<std::size_t>(o.max_points, 3))) {
    auto sheaves = set_sheaves_up_to_iso(p, 2);
    for (const auto& tt : sheaves) {
      PosetPtr slice = share(slice_site(*p, tt));
      MonotoneMap proj = slice_projection(slice, tt);
      bool epi = true;
      for (Point x = 0; x < p->size(); ++x) epi = epi && tt.stalk_size(x) > 0;
      for (const auto& x : sheaves) {
        const bool fx = internal_flabby(x);
        const bool fs = internal_flabby(pullback(proj, x));
        t.check(!fx || fs, [&] { return "X = " + show(x) + " over T = " + show(tt); });
        if (epi) t.check(!fs || fx, [&] { return "descent: X = " + show(x) + " over T = " + show(tt); });
      }
    }
  }
  return from_tally(t);
}

PropertyResult prop_bg(const SuiteOptions&) {
  Tally t;
  SetPresheaf reg = bg_presheaf("regular"), term = bg_presheaf("terminal");
  t.check(internal_flabby(reg), [] { return "regular G-set not internally flabby"; });
  t.check(!is_strongly_flabby(reg), [] { return "regular G-set strongly flabby"; });
  t.check(internal_flabby(term) && is_strongly_flabby(term), [] { return "terminal G-set"; });
  return from_tally(t);
}

PropertyResult prop_global_elements(const SuiteOptions& o) {
  Tally t;
  for (const auto& inst : enumerate_corpus(o.max_points, o.max_stalk)) {
    if (!internal_flabby(inst.sheaf)) continue;
    t.check(!global_sections(inst.sheaf).empty(), [&] { return show(inst.sheaf); });
  }
  return from_tally(t);
}

// ---------------------------------------------------------------- homalg

PropertyResult prop_smith(const SuiteOptions&) {
  Tally t;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 8), entry(-50, 50);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) a(i, j) = entry(rng) * (trial % 5 == 0 && j == 0 ? 0 : 1);
    }
    SmithForm s = smith_normal_form(a);
    bool ok = s.U * a * s.V == s.D && s.U * s.Uinv == IntMatrix::identity(r);
    ok = ok && abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1;
    Integer prev = 1;
    for (std::size_t i = 0; i < r && ok; ++i) {
      for (std::size_t j = 0; j < c && ok; ++j) {
        if (i != j && s.D(i, j) != 0) ok = false;
      }
      if (i < c && ok) {
        const Integer& d = s.D(i, i);
        if (d < 0) ok = false;
        if (prev == 0 && d != 0) ok = false;
        if (prev != 0 && d != 0 && d % prev != 0) ok = false;
        prev = d;
      }
    }
    t.check(ok, [&] { return to_string(a); });
  }
  return from_tally(t, "random matrices up to 8x8, entries in [-50, 50]");
}

std::vector<FPModule> coefficient_modules() {
  return {FPModule::free(Ring::integers(), 1), FPModule::free(Ring::mod(2), 1), FPModule::free(Ring::mod(4), 1)};
}

PropertyResult prop_order_complex(const SuiteOptions& o) {
  Tally t;
  for (const auto& p : all_sites(o.max_points)) {
    for (const auto& a : coefficient_modules()) {
      CohomologyTable lhs = sheaf_cohomology(constant_sheaf(p, a));
      CohomologyTable rhs = order_complex_cohomology(*p, a);
      t.check(lhs.same_as(rhs), [&] {
        return to_json(*p).dump() + " with " + a.ring().name() + ": " + lhs.to_string() + " vs " + rhs.to_string();
      });
    }
  }
  return from_tally(t);
}

PropertyResult prop_flabby_sections_exact(const SuiteOptions& o) {
  const auto& b = suite_battery(o);
  return from_tally(b.sections_exact, std::to_string(b.sequences) + " sequences over Z/2");
}

PropertyResult prop_long_exact(const SuiteOptions& o) {
  Tally t;
  std::vector<std::pair<PosetPtr, std::size_t>> runs;
  for (const auto& p : posets_up_to(std::min<std::size_t>(o.max_points, 3))) runs.push_back({p, o.max_dim});
  runs.push_back({corpus_poset("pseudocircle"), 1});
  for (const auto& [p, d] : runs) {
    for_each_ses(p, 2, d, [&](const ShortExact& s) {
      std::string v = long_exact_violation(s);
      t.check(v.empty(), [&] { return v + ": " + show(s); });
    });
  }
  return from_tally(t);
}

std::vector<NamedMod> acyclicity_corpus(std::size_t field_points, std::size_t d) {
  std::vector<NamedMod> out = module_corpus();
  const std::size_t named = out.size();
  for (std::size_t i = 0; i < named; ++i) out.push_back({"G(" + out[i].name + ")", godement_embed(out[i].sheaf).sheaf});
  for (const auto& fc : field_corpus(field_points, {2}, d)) {
    for (const auto& f : fc.sheaves) out.push_back({show(f), to_mod_sheaf(f)});
  }
  return out;
}

PropertyResult prop_acyclic(const SuiteOptions& o) {
  Tally t;
  std::size_t flabby = 0;
  for (const auto& m : acyclicity_corpus(std::min<std::size_t>(o.max_points, 3), o.max_dim)) {
    if (!is_flabby_traditional(m.sheaf)) continue;
    ++flabby;
    CohomologyTable h = sheaf_cohomology(m.sheaf);
    bool ok = true;
    for (std::size_t n = 1; n < h.groups.size(); ++n) ok = ok && h.groups[n].is_zero();
    t.check(ok, [&] { return m.name + ": " + h.to_string(); });
  }
  return from_tally(t, std::to_string(flabby) + " flabby sheaves");
}

PropertyResult prop_stalk_formula(const SuiteOptions&) {
  Tally t;
  for (const auto& nm : corpus_maps()) {
    for (const auto& m : named_mod_sheaves(nm.map.source_ptr())) {
      StalkFormulaReport r = stalk_formula_check(nm.map, m.sheaf);
      t.check(r.ok(), [&] { return nm.name + ", " + m.name + ": " + r.mismatches.front(); });
    }
  }
  return from_tally(t);
}

PropertyResult prop_resolution_independence(const SuiteOptions& o) {
  Tally t;
  std::vector<NamedMod> corpus = module_corpus();
  for (const auto& fc : field_corpus(std::min<std::size_t>(o.max_points, 3), {2}, 1)) {
    for (const auto& f : fc.sheaves) corpus.push_back({show(f), to_mod_sheaf(f)});
  }
  for (const auto& m : corpus) {
    CohomologyTable a = sheaf_cohomology(m.sheaf);
    CohomologyTable b = sheaf_cohomology(m.sheaf, std::nullopt, true);
    t.check(a.same_as(b), [&] { return m.name + ": " + a.to_string() + " vs doubled " + b.to_string(); });
  }
  return from_tally(t);
}

// ---------------------------------------------------------------- cli

PropertyResult prop_round_trip(const SuiteOptions& o) {
  Tally t;
  PropertyResult r;
  if (o.data_dir.empty() || !std::filesystem::exists(o.data_dir)) {
    r.note = "no data directory; skipped";
    return r;
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(o.data_dir)) {
    if (e.is_regular_file() && (e.path().extension() == ".json" || e.path().extension() == ".sexp")) {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    try {
      if (path.extension() == ".sexp") {
        std::string once = to_sexpr(*parse_formula(read_text_file(path.string())));
        t.check(to_sexpr(*parse_formula(once)) == once, [&] { return path.string() + ": " + once; });
        continue;
      }
      Json j = read_json_file(path.string());
      Json again = round_trip(j);
      t.check(round_trip(again) == again, [&] { return path.string() + ": second round trip differs"; });
      t.check(again == round_trip(j), [&] { return path.string() + ": not deterministic"; });
    } catch (const std::exception& e) {
      t.check(false, [&] { return path.string() + ": " + e.what(); });
    }
  }
  // Files in normal form must be reproduced exactly.
  for (const auto& p : named_posets()) {
    Json j = to_json(*p);
    t.check(round_trip(j) == j, [&] { return j.dump(); });
    for (const auto& f : named_set_sheaves(p)) {
      Json js = to_json(f);
      t.check(round_trip(js) == js, [&] { return js.dump(); });
    }
    for (const auto& m : named_mod_sheaves(p)) {
      Json jm = to_json(m.sheaf);
      t.check(round_trip(jm) == jm, [&] { return jm.dump(); });
    }
  }
  return from_tally(t, std::to_string(files.size()) + " files");
}

PropertyResult prop_recount(const SuiteOptions&) {
  Tally t;
  const std::size_t n = 3, k = 2;
  const std::size_t fast = enumerate_corpus(n, k).size();
  const std::size_t slow = brute_force_sheaf_count(n, k);
  t.check(fast == slow, [&] { return "enumerate_corpus(3, 2) = " + std::to_string(fast) + ", recount " + std::to_string(slow); });
  for (std::size_t m = 1; m <= 3; ++m) {
    const std::size_t a = posets_up_to_iso(m).size(), b = brute_force_poset_count(m);
    t.check(a == b, [&] { return std::to_string(m) + " points: " + std::to_string(a) + " vs " + std::to_string(b); });
  }
  return from_tally(t, std::to_string(fast) + " sheaves");
}

PropertyResult prop_registry(const SuiteOptions&);

}  // namespace

std::vector<Property> all_properties() {
  return {
      {"site", "minimal open U_x is the up-closure of x", prop_minimal_open},
      {"site", "opens form a topology", prop_topology},
      {"site", "preimages of opens under monotone maps are open", prop_preimages},
      {"site", "slice over the terminal sheaf is the site", prop_slice_terminal},
      {"site", "category tables are valid", prop_categories},
      {"sheafcore", "sections satisfy the sheaf condition", prop_sheaf_condition},
      {"sheafcore", "global sections of a pushforward", prop_pushforward_sections},
      {"sheafcore", "pullback preserves monos and epis", prop_pullback_mono_epi},
      {"sheafcore", "sections are left exact", prop_left_exact},
      {"flabby", "injective sheaves are flabby", prop_injective_flabby},
      {"flabby", "terminal sheaf and products of flabby sheaves are flabby", prop_products},
      {"flabby", "Godement embedding is a mono into a flabby sheaf", prop_godement},
      {"flabby", "internal hom into an injective is flabby", prop_hom_flabby},
      {"flabby", "preimage subsheaves are flabby", prop_preimages_flabby},
      {"flabby", "extension of flabby by flabby is flabby", prop_ses_closure},
      {"flabby", "quotient of flabby by flabby is flabby", prop_ses_quotient},
      {"flabby", "global sections exact when the kernel is flabby", prop_exact_as_presheaves},
      {"flabby", "pushforward along epi-preserving maps keeps flabby objects", prop_pushforward_flabby_objects},
      {"flabby", "pushforward of flabby sheaves is flabby", prop_pushforward_flabby},
      {"flabby", "external and internal injectivity agree", prop_injectivity_theorem},
      {"flabby", "an inhabited sheaf that is not flabby", prop_taboo},
      {"internal", "forcing is monotone", prop_monotone},
      {"internal", "intuitionistic tautologies are forced", prop_ipc},
      {"internal", "traditional, local and internal flabbiness agree", prop_flabby_agreement},
      {"internal", "flabbiness pulls back to slices and descends along epis", prop_slices},
      {"internal", "BG: regular G-set flabby but not strongly flabby", prop_bg},
      {"internal", "flabby objects have global elements", prop_global_elements},
      {"homalg", "Smith normal form", prop_smith},
      {"homalg", "constant coefficients match the order complex", prop_order_complex},
      {"homalg", "sections exact when the kernel is flabby", prop_flabby_sections_exact},
      {"homalg", "long exact sequence in low degrees", prop_long_exact},
      {"homalg", "flabby sheaves are acyclic", prop_acyclic},
      {"homalg", "higher direct images match the stalk formula", prop_stalk_formula},
      {"homalg", "cohomology does not depend on the resolution", prop_resolution_independence},
      {"cli", "corpus files round-trip", prop_round_trip},
      {"cli", "corpus enumeration matches a recount", prop_recount},
      {"cli", "suite covers every module", prop_registry},
  };
}

namespace {

PropertyResult prop_registry(const SuiteOptions&) {
  Tally t;
  std::set<std::string> names;
  std::set<std::string> modules;
  for (const auto& p : all_properties()) {
    t.check(names.insert(p.module + "/" + p.name).second, [&] { return "duplicate property " + p.name; });
    modules.insert(p.module);
  }
  for (const char* m : {"site", "sheafcore", "flabby", "internal", "homalg", "cli"}) {
    t.check(modules.count(m) != 0, [&] { return std::string("no properties for module ") + m; });
  }
  return from_tally(t);
}

}  // namespace

std::vector<PropertyResult> run_properties(const SuiteOptions& options, const std::string& filter) {
  std::vector<PropertyResult> out;
  for (const auto& p : all_properties()) {
    if (!filter.empty() && p.module.find(filter) == std::string::npos && p.name.find(filter) == std::string::npos) {
      continue;
    }
    const auto t0 = Clock::now();
    PropertyResult r;
    try {
      r = p.run(options);
    } catch (const std::exception& e) {
      r.passed = false;
      r.counterexample = std::string("exception: ") + e.what();
    }
    r.module = p.module;
    r.name = p.name;
    r.seconds = since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------- acceptance

namespace {

AcceptanceResult verdict(bool passed, std::string detail) {
  AcceptanceResult r;
  r.passed = passed;
  r.detail = std::move(detail);
  return r;
}

std::string tally_line(const std::string& what, const Tally& t) {
  return what + " " + std::to_string(t.cases) + (t.ok() ? " ok" : " FAILED: " + t.failure);
}

AcceptanceResult ac1() {
  Tally t;
  std::size_t flabby = 0;
  auto corpus = enumerate_corpus(4, 3);
  for (const auto& inst : corpus) flabby_agreement(t, inst.sheaf, [&] { return show(inst.sheaf); }, &flabby);
  const bool big = corpus.size() >= 10000;
  return verdict(t.ok() && big, "instances=" + std::to_string(corpus.size()) + " flabby=" + std::to_string(flabby) +
                                    (t.ok() ? " disagreements=0" : " disagreement: " + t.failure));
}

AcceptanceResult ac2() {
  Tally t;
  std::ostringstream os;
  for (const auto& name : corpus_poset_names()) {
    PosetPtr p = corpus_poset(name);
    for (const auto& a : coefficient_modules()) {
      CohomologyTable lhs = sheaf_cohomology(constant_sheaf(p, a));
      CohomologyTable rhs = order_complex_cohomology(*p, a);
      t.check(lhs.same_as(rhs), [&] { return name + "/" + a.ring().name() + ": " + lhs.to_string() + " vs " + rhs.to_string(); });
      if (a.ring().is_integers() && (name == "pseudocircle" || name == "sphere2")) {
        os << name << ": " << lhs.to_string() << "; ";
        auto g = lhs.describe();
        g.resize(3, "0");
        const std::vector<std::string> want = name == "pseudocircle" ? std::vector<std::string>{"Z", "Z", "0"}
                                                                     : std::vector<std::string>{"Z", "0", "Z"};
        t.check(g == want, [&] { return name + " has " + lhs.to_string(); });
      }
    }
  }
  return verdict(t.ok(), os.str() + tally_line("comparisons", t));
}

AcceptanceResult ac3() {
  PosetPtr p = corpus_poset("pseudocircle");
  ModSheaf z = *corpus_sheaf(p, "const-Z").mod;
  const Open ab(Open::singleton(p->index_of("a")) | Open::singleton(p->index_of("b")));
  std::ostringstream os;
  bool ok = true;
  const std::pair<const char*, FlabbyVerdict> checks[] = {{"traditional", check_flabby_traditional(z)},
                                                          {"local", check_flabby_local(z)},
                                                          {"strong", check_strongly_flabby(z)}};
  for (const auto& [name, v] : checks) {
    os << name << "=" << verdict_text(v.flabby);
    if (v.counterexample) os << " (" << v.counterexample->describe(*p) << ")";
    os << "; ";
    ok = ok && !v.flabby && v.counterexample && v.counterexample->open == ab;
  }
  return verdict(ok, os.str());
}

AcceptanceResult ac4() {
  Tally acyclic, doubled;
  std::vector<NamedMod> base = module_corpus();
  for (const auto& fc : field_corpus(3, {2}, 1)) {
    for (const auto& f : fc.sheaves) base.push_back({show(f), to_mod_sheaf(f)});
  }
  for (const auto& m : base) {
    ModGodement g = godement_embed(m.sheaf);
    CohomologyTable h = sheaf_cohomology(g.sheaf);
    bool ok = true;
    for (std::size_t n = 1; n < h.groups.size(); ++n) ok = ok && h.groups[n].is_zero();
    acyclic.check(ok, [&] { return "G(" + m.name + "): " + h.to_string(); });
    for (const ModSheaf* x : std::initializer_list<const ModSheaf*>{&m.sheaf, &g.sheaf}) {
      CohomologyTable a = sheaf_cohomology(*x);
      CohomologyTable b = sheaf_cohomology(*x, std::nullopt, true);
      doubled.check(a.same_as(b), [&] { return m.name + ": " + a.to_string() + " vs " + b.to_string(); });
    }
  }
  return verdict(acyclic.ok() && doubled.ok(),
                 tally_line("Godement sheaves acyclic", acyclic) + "; " + tally_line("tables unchanged by doubling", doubled));
}

AcceptanceResult ac5() {
  std::vector<PosetPtr> sites{corpus_poset("sierpinski"), corpus_poset("pseudocircle")};
  const SesBattery& b = ses_battery(sites, 2, "acceptance");
  const bool ok = b.sections_exact.ok() && b.closure.ok() && b.quotient.ok() && b.preimages.ok() &&
                  b.global_exact.ok() && b.left_exact.ok();
  std::string d = "sequences=" + std::to_string(b.sequences) + "; " + tally_line("sections exact", b.sections_exact) + "; " +
                  tally_line("extension", b.closure) + "; " + tally_line("quotient", b.quotient) + "; " +
                  tally_line("preimages", b.preimages) + "; " + tally_line("exact-as-presheaves", b.global_exact);
  return verdict(ok, d);
}

AcceptanceResult ac6() {
  Tally t;
  std::size_t maps = 0;
  bool circle_to_sier = false;
  for (const auto& nm : corpus_maps()) {
    ++maps;
    ModSheaf z = constant_sheaf(nm.map.source_ptr(), FPModule::free(Ring::integers(), 1));
    StalkFormulaReport r = stalk_formula_check(nm.map, z);
    t.check(r.ok(), [&] { return nm.name + ": " + r.mismatches.front(); });
    if (nm.name.rfind("id-", 0) == 0) {
      for (std::size_t n = 1; n < r.table.size(); ++n) {
        for (const auto& s : r.table[n]) t.check(s == "0", [&] { return nm.name + ": R^" + std::to_string(n) + " = " + s; });
      }
    }
    if (nm.name == "pseudocircle->point") t.check(r.table.at(1).at(0) == "Z", [&] { return "R^1 = " + r.table[1][0]; });
    if (nm.name == "sphere2->point") t.check(r.table.at(2).at(0) == "Z", [&] { return "R^2 = " + r.table[2][0]; });
    if (nm.name.rfind("pseudocircle->sierpinski", 0) == 0) circle_to_sier = true;
  }
  const bool ok = t.ok() && maps >= 20 && circle_to_sier;
  return verdict(ok, "maps=" + std::to_string(maps) + "; " + tally_line("checks", t));
}

AcceptanceResult ac7() {
  InjectivityComparison c = compare_injectivity(3, {2, 3}, 2, true);
  return verdict(c.oracle.ok() && c.internal.ok(),
                 "injective=" + std::to_string(c.injective) + "; " + tally_line("vs extension search", c.oracle) + "; " +
                     tally_line("vs internal family d=2", c.internal));
}

AcceptanceResult ac8() {
  SetPresheaf reg = bg_presheaf("regular"), term = bg_presheaf("terminal");
  const bool ri = internal_flabby(reg), rs = is_strongly_flabby(reg);
  const bool ti = internal_flabby(term), ts = is_strongly_flabby(term);
  return verdict(ri && !rs && ti && ts, "regular: internal=" + verdict_text(ri) + " strong=" + verdict_text(rs) +
                                             "; terminal: internal=" + verdict_text(ti) + " strong=" + verdict_text(ts));
}

AcceptanceResult ac9() {
  SuiteOptions o;
  o.max_points = 3;
  o.max_stalk = 2;
  o.max_dim = 2;
  PropertyResult inj = prop_injective_flabby(o);
  Tally emb = godement_tally(3, 2, 3, 2);
  PropertyResult prod = prop_products(o);
  Tally hom = hom_flabby_tally(3, 2, 2);
  const SesBattery& b = suite_battery(o);
  auto line = [](const std::string& what, const PropertyResult& r) {
    return what + " " + std::to_string(r.cases) + (r.passed ? " ok" : " FAILED: " + r.counterexample);
  };
  const bool ok = inj.passed && emb.ok() && prod.passed && hom.ok() && b.closure.ok();
  return verdict(ok, line("injective=>flabby", inj) + "; " + tally_line("embedding", emb) + "; " +
                         line("terminal/products", prod) + "; " + tally_line("[T,I]", hom) + "; " +
                         tally_line("SES closure", b.closure));
}

AcceptanceResult ac10() {
  PosetPtr p = corpus_poset("pseudocircle");
  Envelope e = candidate_envelope(*corpus_sheaf(p, "const-Z2").mod);
  std::ostringstream os;
  os << "mono=" << verdict_text(e.embedding_mono) << " traditional=" << verdict_text(e.traditional.flabby)
     << " local=" << verdict_text(e.local.flabby);
  if (e.traditional.flabby) {
    os << " (finding: flabby on this finite model)";
  } else if (e.traditional.counterexample) {
    os << " (" << e.traditional.counterexample->describe(e.sheaf.site()) << ")";
  }
  if (!e.addition_violation.empty()) os << "; addition not well defined: " << e.addition_violation;
  return verdict(e.embedding_mono && e.traditional.flabby == e.local.flabby, os.str());
}

}  // namespace

std::vector<Acceptance> acceptance_criteria() {
  return {
      {1, "flabbiness definitions agree on the exhaustive corpus", 300, ac1},
      {2, "sheaf cohomology of constant sheaves matches the order complex", 10, ac2},
      {3, "constant sheaf Z on the pseudocircle is not flabby", 0, ac3},
      {4, "Godement sheaves are acyclic and doubling changes nothing", 120, ac4},
      {5, "short exact sequence battery over Z/2", 0, ac5},
      {6, "higher direct images match the stalk formula", 60, ac6},
      {7, "injectivity: Ext criterion, extension search and internal family agree", 300, ac7},
      {8, "BG: regular G-set internally flabby, not strongly flabby", 0, ac8},
      {9, "properties of flabby objects on the bounded corpus", 0, ac9},
      {10, "candidate envelope of constant Z/2 on the pseudocircle", 0, ac10},
  };
}

AcceptanceResult run_acceptance(const Acceptance& a) {
  const auto t0 = Clock::now();
  AcceptanceResult r;
  try {
    r = a.run();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.id = a.id;
  r.title = a.title;
  r.seconds = since(t0);
  r.limit_seconds = a.limit_seconds;
  if (a.limit_seconds > 0 && r.seconds > a.limit_seconds) {
    r.passed = false;
    r.detail += "; exceeded time bound";
  }
  return r;
}

}  // namespace flasque
