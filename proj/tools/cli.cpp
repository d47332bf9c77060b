#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "flasque/corpus/corpus.hpp"
#include "flasque/corpus/enumerate.hpp"
#include "flasque/errors.hpp"
#include "flasque/flabby/flabby.hpp"
#include "flasque/flabby/injective.hpp"
#include "flasque/homalg/derived.hpp"
#include "flasque/internal/internal.hpp"
#include "flasque/io/json_io.hpp"
#include "flasque/suite/properties.hpp"

namespace flasque {

namespace {

using Clock = std::chrono::steady_clock;

/// FNV-1a over the concatenated inputs.
std::string digest(const std::vector<std::string>& parts) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& p : parts) {
    for (unsigned char c : p) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

struct Options {
  bool json = false;
  bool timings = false;
};

/// The report every command emits.
struct Report {
  std::string command;
  std::vector<std::string> inputs;
  Json body = Json::object();
  Clock::time_point start = Clock::now();

  void emit(std::ostream& out, const Options& o, const std::string& text) const {
    if (o.json) {
      Json j;
      j["format"] = kFormatVersion;
      j["command"] = command;
      j["inputs"] = digest(inputs);
      for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
      if (o.timings) j["seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
      out << j.dump(2) << "\n";
    } else {
      out << text;
      if (o.timings) {
        out << "time: " << std::fixed << std::setprecision(3)
            << std::chrono::duration<double>(Clock::now() - start).count() << " s\n";
      }
    }
  }
};

/// Sheaf input: a corpus name (with --corpus SITE) or a JSON file.
struct SheafInput {
  std::string corpus;
  std::string sheaf;
  std::string site;
};

struct LoadedSheaf {
  std::optional<SetSheaf> set;
  std::optional<ModSheaf> mod;
  std::optional<SetPresheaf> presheaf;
  std::string source;
};

LoadedSheaf load_sheaf(const SheafInput& in, std::vector<std::string>& inputs) {
  LoadedSheaf out;
  if (in.sheaf.empty()) throw InputError("--sheaf is required");
  if (!in.corpus.empty()) {
    inputs.push_back("corpus:" + in.corpus + "/" + in.sheaf);
    out.source = in.corpus + "/" + in.sheaf;
    if (in.corpus == "BG") {
      out.presheaf = bg_presheaf(in.sheaf);
      return out;
    }
    CorpusSheaf c = corpus_sheaf(corpus_poset(in.corpus), in.sheaf);
    out.set = c.set;
    out.mod = c.mod;
    return out;
  }
  const std::string text = read_text_file(in.sheaf);
  inputs.push_back(text);
  out.source = in.sheaf;
  Json j = parse_json(text);
  PosetPtr site;
  CategoryPtr cat;
  if (!in.site.empty()) {
    const std::string st = read_text_file(in.site);
    inputs.push_back(st);
    Json sj = parse_json(st);
    const std::string k = json_kind(sj);
    if (k == "poset") {
      site = share(poset_from_json(sj));
    } else {
      cat = share(category_from_json(sj));
    }
  }
  const std::string kind = json_kind(j);
  if (kind == "set-sheaf") {
    out.set = set_sheaf_from_json(j, site);
  } else if (kind == "module-sheaf") {
    out.mod = mod_sheaf_from_json(j, site);
  } else if (kind == "set-presheaf") {
    out.presheaf = presheaf_from_json(j, cat);
  } else {
    throw InputError(in.sheaf + ": expected a set-sheaf, module-sheaf or set-presheaf, got \"" + kind + "\"");
  }
  return out;
}

const FinPoset& site_of(const LoadedSheaf& s) { return s.set ? s.set->site() : s.mod->site(); }

Json counterexample_json(const Counterexample& c, const FinPoset& p) {
  Json j;
  Json open = Json::array();
  for (Point x : c.open.points()) open.push_back(p.name(x));
  j["open"] = open;
  Json sec = Json::object();
  for (const auto& [x, v] : c.section) sec[p.name(x)] = v;
  j["section"] = sec;
  if (c.point) j["point"] = p.name(*c.point);
  return j;
}

void add_sheaf_options(CLI::App* app, SheafInput& in) {
  app->add_option("--corpus", in.corpus, "Built-in site (point, sierpinski, antichain2, pseudocircle, sphere2, BG)");
  app->add_option("--sheaf", in.sheaf, "Sheaf JSON file, or a corpus sheaf name with --corpus");
  app->add_option("--site", in.site, "Site JSON file for sheaves without an embedded site");
}

int cmd_check(const SheafInput& in, const std::string& mode, const Options& o, std::ostream& out) {
  Report r;
  r.command = "check";
  LoadedSheaf s = load_sheaf(in, r.inputs);
  std::vector<std::string> modes;
  if (mode == "all" && s.presheaf) {
    modes = {"strong", "internal"};
  } else if (mode == "all") {
    modes = {"traditional", "local", "strong", "internal"};
  } else {
    modes = {mode};
  }
  bool all = true;
  std::ostringstream text;
  Json verdicts = Json::object();
  for (const auto& m : modes) {
    Json v;
    bool flabby = false;
    if (s.presheaf) {
      if (m == "strong") {
        PresheafFlabbyVerdict pv = check_strongly_flabby(*s.presheaf);
        flabby = pv.flabby;
      } else if (m == "internal") {
        flabby = internal_flabby(*s.presheaf);
      } else {
        throw InputError("mode " + m + " needs a sheaf on a poset; presheaves support strong and internal");
      }
      v["verdict"] = flabby;
      text << m << ": " << (flabby ? "flabby" : "not flabby") << "\n";
    } else if (m == "internal") {
      std::vector<Point> failures;
      if (s.set) {
        failures = internal_flabby_failures(*s.set);
      } else {
        failures = internal_flabby_failures(underlying_set_sheaf(*s.mod));
      }
      flabby = failures.empty();
      v["verdict"] = flabby;
      const FinPoset& p = site_of(s);
      if (!flabby) {
        Json st = Json::array();
        for (Point x : failures) st.push_back(p.name(x));
        v["failing_stages"] = st;
      }
      text << m << ": " << (flabby ? "flabby" : "not flabby");
      if (!flabby) {
        text << " (fails at stage";
        for (Point x : failures) text << " " << p.name(x);
        text << ")";
      }
      text << "\n";
    } else {
      FlabbyVerdict fv;
      if (m == "traditional") {
        fv = s.set ? check_flabby_traditional(*s.set) : check_flabby_traditional(*s.mod);
      } else if (m == "local") {
        fv = s.set ? check_flabby_local(*s.set) : check_flabby_local(*s.mod);
      } else if (m == "strong") {
        fv = s.set ? check_strongly_flabby(*s.set) : check_strongly_flabby(*s.mod);
      } else {
        throw InputError("unknown mode \"" + m + "\" (traditional, local, strong, internal, all)");
      }
      flabby = fv.flabby;
      v["verdict"] = flabby;
      const FinPoset& p = site_of(s);
      text << m << ": " << (flabby ? "flabby" : "not flabby");
      if (fv.counterexample) {
        v["counterexample"] = counterexample_json(*fv.counterexample, p);
        text << " (" << fv.counterexample->describe(p) << ")";
      }
      text << "\n";
    }
    all = all && flabby;
    verdicts[m] = v;
  }
  if (modes.size() == 1) {
    r.body = verdicts[modes[0]];
  } else {
    r.body["verdict"] = all;
    r.body["modes"] = verdicts;
  }
  r.emit(out, o, text.str());
  return all ? kExitPass : kExitViolated;
}

int cmd_injective(const SheafInput& in, std::size_t family, const Options& o, std::ostream& out) {
  Report r;
  r.command = "injective";
  LoadedSheaf s = load_sheaf(in, r.inputs);
  if (!s.mod) throw InputError("injective needs a module sheaf over Z/p");
  InjectivityReport rep = injectivity_report(*s.mod);
  const FinPoset& p = s.mod->site();
  std::ostringstream text;
  text << "injective: " << (rep.injective ? "yes" : "no") << "\n";
  Json ext = Json::object();
  text << "Ext^1(S_x, I):";
  for (Point x = 0; x < p.size(); ++x) {
    ext[p.name(x)] = rep.ext_dims[x];
    text << " " << p.name(x) << "=" << rep.ext_dims[x];
  }
  text << "\n";
  r.body["verdict"] = rep.injective;
  r.body["ext1"] = ext;
  if (rep.witness) {
    r.body["witness"] = p.name(*rep.witness);
    text << "witness: simple sheaf at " << p.name(*rep.witness) << "\n";
  }
  bool ok = rep.injective;
  if (family > 0) {
    FamilyReport fr = internal_injective_family(*s.mod, family);
    r.body["internal_family"] = {{"bound", fr.bound}, {"passed", fr.passed}, {"checks", fr.checks}};
    text << "internal family (d = " << fr.bound << "): " << (fr.passed ? "passed" : "failed") << " after "
         << fr.checks << " checks\n";
    if (fr.witness) {
      r.body["internal_family"]["witness"] = fr.describe();
      text << fr.describe() << "\n";
    }
    if (fr.passed != rep.injective) text << "warning: external and internal verdicts differ\n";
  }
  r.emit(out, o, text.str());
  return ok ? kExitPass : kExitViolated;
}

int cmd_cohomology(const SheafInput& in, std::optional<std::size_t> nmax, const Options& o, std::ostream& out) {
  Report r;
  r.command = "cohomology";
  LoadedSheaf s = load_sheaf(in, r.inputs);
  if (!s.mod) throw InputError("cohomology needs a module sheaf");
  CohomologyTable t = sheaf_cohomology(*s.mod, nmax);
  r.body = to_json(t);
  std::ostringstream text;
  auto g = t.describe();
  for (std::size_t n = 0; n < g.size(); ++n) text << "H" << n << " = " << g[n] << "\n";
  r.emit(out, o, text.str());
  return kExitPass;
}

int cmd_rderived(const std::string& map_file, const std::string& corpus_map, const SheafInput& in,
                 std::optional<std::size_t> nmax, bool check, const Options& o, std::ostream& out) {
  Report r;
  r.command = "rderived";
  std::optional<MonotoneMap> f;
  if (!corpus_map.empty()) {
    for (auto& nm : corpus_maps()) {
      if (nm.name == corpus_map) f = nm.map;
    }
    if (!f) throw InputError("unknown corpus map \"" + corpus_map + "\" (see corpus list)");
    r.inputs.push_back("corpus-map:" + corpus_map);
  } else if (!map_file.empty()) {
    const std::string text = read_text_file(map_file);
    r.inputs.push_back(text);
    f = map_from_json(parse_json(text));
  } else {
    throw InputError("--map or --corpus-map is required");
  }
  ModSheaf s;
  if (!corpus_map.empty() && in.corpus.empty() && !in.sheaf.empty() && in.sheaf.find(".json") == std::string::npos) {
    CorpusSheaf c = corpus_sheaf(f->source_ptr(), in.sheaf);
    if (!c.mod) throw InputError("rderived needs a module sheaf");
    s = *c.mod;
    r.inputs.push_back("sheaf:" + in.sheaf);
  } else {
    SheafInput si = in;
    LoadedSheaf ls = load_sheaf(si, r.inputs);
    if (!ls.mod) throw InputError("rderived needs a module sheaf");
    s = *ls.mod;
  }
  if (!(s.site() == f->source())) throw InputError("the sheaf does not live on the source of the map");
  std::vector<ModSheaf> images = higher_direct_image(*f, s, nmax);
  const FinPoset& q = f->target();
  std::ostringstream text;
  Json table = Json::object();
  for (std::size_t n = 0; n < images.size(); ++n) {
    Json row = Json::object();
    text << "R" << n << ":";
    for (Point y = 0; y < q.size(); ++y) {
      row[q.name(y)] = images[n].stalk(y).describe();
      text << " " << q.name(y) << "=" << images[n].stalk(y).describe();
    }
    text << "\n";
    table["R" + std::to_string(n)] = row;
  }
  r.body["table"] = table;
  int code = kExitPass;
  if (check) {
    StalkFormulaReport rep = stalk_formula_check(*f, s, nmax);
    r.body["mismatches"] = rep.mismatches;
    text << "stalk formula: " << (rep.ok() ? "all stalks match" : "mismatches") << "\n";
    for (const auto& m : rep.mismatches) text << "  " << m << "\n";
    if (!rep.ok()) code = kExitViolated;
  }
  r.emit(out, o, text.str());
  return code;
}

int cmd_internal_eval(const SheafInput& in, const std::string& formula_file, const std::string& formula_text,
                      const std::string& object, const Options& o, std::ostream& out) {
  Report r;
  r.command = "internal eval";
  LoadedSheaf s = load_sheaf(in, r.inputs);
  std::string text;
  if (!formula_file.empty()) {
    text = read_text_file(formula_file);
  } else if (!formula_text.empty()) {
    text = formula_text;
  } else {
    throw InputError("--formula or --expr is required");
  }
  r.inputs.push_back(text);
  FormulaPtr f = parse_formula(text);
  std::optional<Structure> st;
  if (s.presheaf) {
    st.emplace(s.presheaf->category_ptr());
    st->add_object(object, *s.presheaf);
  } else {
    SetSheaf x = s.set ? *s.set : underlying_set_sheaf(*s.mod);
    st.emplace(x.site_ptr());
    st->add_object(object, x);
  }
  Forcing forcing(*st, f);
  const FinCategory& c = st->category();
  Json stages = Json::object();
  std::ostringstream os;
  bool all = true;
  for (Object x = 0; x < c.object_count(); ++x) {
    const bool v = forcing.force(x);
    all = all && v;
    stages[c.object_name(x)] = v;
    os << c.object_name(x) << ": " << (v ? "forced" : "not forced") << "\n";
  }
  os << "holds globally: " << (all ? "yes" : "no") << "\n";
  r.body["formula"] = to_sexpr(*f);
  r.body["stages"] = stages;
  r.body["verdict"] = all;
  r.emit(out, o, os.str());
  return all ? kExitPass : kExitViolated;
}

int cmd_suite(const SuiteOptions& so, const std::string& filter, const Options& o, std::ostream& out) {
  Report r;
  r.command = "suite";
  r.inputs = {std::to_string(so.max_points), std::to_string(so.max_stalk), std::to_string(so.max_dim), filter};
  std::vector<PropertyResult> results = run_properties(so, filter);
  std::ostringstream text;
  Json arr = Json::array();
  std::size_t failed = 0;
  for (const auto& p : results) {
    failed += !p.passed;
    text << (p.passed ? "PASS" : "FAIL") << "  [" << p.module << "] " << p.name << " (" << p.cases << " cases";
    if (!p.note.empty()) text << "; " << p.note;
    text << ")";
    if (o.timings) text << " " << std::fixed << std::setprecision(2) << p.seconds << " s";
    text << "\n";
    if (!p.passed) text << "      counterexample: " << p.counterexample << "\n";
    Json j;
    j["module"] = p.module;
    j["property"] = p.name;
    j["passed"] = p.passed;
    j["cases"] = p.cases;
    if (!p.note.empty()) j["note"] = p.note;
    if (!p.passed) j["counterexample"] = p.counterexample;
    if (o.timings) j["seconds"] = p.seconds;
    arr.push_back(j);
  }
  text << results.size() - failed << "/" << results.size() << " properties hold\n";
  r.body["properties"] = arr;
  r.body["verdict"] = failed == 0;
  r.emit(out, o, text.str());
  return failed == 0 ? kExitPass : kExitViolated;
}

int cmd_corpus_list(std::size_t n, std::size_t k, bool force, const Options& o, std::ostream& out) {
  Report r;
  r.command = "corpus list";
  r.inputs = {std::to_string(n), std::to_string(k)};
  std::ostringstream text;
  Json sites = Json::object();
  for (const auto& name : corpus_poset_names()) {
    PosetPtr p = corpus_poset(name);
    Json j;
    j["points"] = p->names();
    j["sheaves"] = corpus_sheaf_names(*p);
    sites[name] = j;
    text << name << " (" << p->size() << " points): ";
    const auto sh = corpus_sheaf_names(*p);
    for (std::size_t i = 0; i < sh.size(); ++i) text << (i ? ", " : "") << sh[i];
    text << "\n";
  }
  sites["BG"] = {{"points", Json::array({"*"})}, {"sheaves", Json::array({"regular", "terminal"})}};
  text << "BG (Z/2 sets): regular, terminal\n";
  Json maps = Json::array();
  text << "maps:";
  for (const auto& nm : corpus_maps()) {
    maps.push_back(nm.name);
    text << " " << nm.name;
  }
  text << "\n";
  r.body["sites"] = sites;
  r.body["maps"] = maps;
  if (n > 0) {
    auto inst = enumerate_corpus(n, k, force);
    Json counts = Json::array();
    for (std::size_t m = 1; m <= n; ++m) {
      std::size_t posets = posets_up_to_iso(m).size();
      std::size_t sheaves = 0;
      for (const auto& i : inst) sheaves += i.site->size() == m;
      counts.push_back({{"points", m}, {"posets", posets}, {"sheaves", sheaves}});
      text << m << " points: " << posets << " posets, " << sheaves << " sheaves with stalks <= " << k << "\n";
    }
    text << "total: " << inst.size() << "\n";
    r.body["enumerated"] = {{"max_points", n}, {"max_stalk", k}, {"counts", counts}, {"total", inst.size()}};
  }
  r.emit(out, o, text.str());
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sheaves on finite spaces: flabbiness, injectivity, cohomology", "flabby"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable report");
  app.add_flag("--timings", o.timings, "Report running times");

  SheafInput in;
  std::string mode = "traditional";
  auto* check = app.add_subcommand("check", "Flabbiness of a sheaf");
  add_sheaf_options(check, in);
  check->add_option("--mode", mode, "traditional, local, strong, internal or all");

  std::size_t family = 0;
  auto* injective = app.add_subcommand("injective", "Injectivity of a sheaf over Z/p");
  add_sheaf_options(injective, in);
  injective->add_option("--family", family, "Also run the internal test family with this stalk bound");

  std::optional<std::size_t> nmax;
  auto* cohomology = app.add_subcommand("cohomology", "Sheaf cohomology");
  add_sheaf_options(cohomology, in);
  cohomology->add_option("--nmax", nmax, "Highest degree");

  std::string map_file, corpus_map;
  bool check_stalks = false;
  auto* rderived = app.add_subcommand("rderived", "Higher direct images");
  add_sheaf_options(rderived, in);
  rderived->add_option("--map", map_file, "Monotone map JSON file");
  rderived->add_option("--corpus-map", corpus_map, "Built-in map (see corpus list)");
  rderived->add_option("--nmax", nmax, "Highest degree");
  rderived->add_flag("--check-stalks", check_stalks, "Compare stalks with cohomology of preimages");

  std::string formula_file, formula_text, object = "X";
  auto* internal = app.add_subcommand("internal", "Internal language");
  internal->require_subcommand(1);
  auto* eval = internal->add_subcommand("eval", "Force a formula at every stage");
  add_sheaf_options(eval, in);
  eval->add_option("--formula", formula_file, "S-expression formula file");
  eval->add_option("--expr", formula_text, "S-expression formula text");
  eval->add_option("--object", object, "Name of the sheaf in the formula");

  SuiteOptions so;
  std::string filter, data_dir;
  auto* suite = app.add_subcommand("suite", "Run the property battery");
  suite->add_option("--max-points", so.max_points, "Largest enumerated poset");
  suite->add_option("--max-stalk", so.max_stalk, "Largest enumerated stalk");
  suite->add_option("--max-dim", so.max_dim, "Largest stalk dimension of enumerated field sheaves");
  suite->add_option("--filter", filter, "Only properties whose module or name contains this");
  suite->add_option("--data", so.data_dir, "Corpus directory for the round-trip property");

  std::size_t enum_n = 0, enum_k = 3;
  bool force = false;
  auto* corpus = app.add_subcommand("corpus", "Built-in corpus");
  corpus->require_subcommand(1);
  auto* list = corpus->add_subcommand("list", "List built-in sites, sheaves and maps");
  list->add_option("--enumerate", enum_n, "Also count enumerated sheaves on posets up to this size");
  list->add_option("--max-stalk", enum_k, "Stalk bound for --enumerate");
  list->add_flag("--force", force, "Allow bounds beyond 5 points or stalk 3");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }
  try {
    if (*check) return cmd_check(in, mode, o, out);
    if (*injective) return cmd_injective(in, family, o, out);
    if (*cohomology) return cmd_cohomology(in, nmax, o, out);
    if (*rderived) return cmd_rderived(map_file, corpus_map, in, nmax, check_stalks, o, out);
    if (*eval) return cmd_internal_eval(in, formula_file, formula_text, object, o, out);
    if (*suite) return cmd_suite(so, filter, o, out);
    if (*list) return cmd_corpus_list(enum_n, enum_k, force, o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitInput;
  } catch (const BoundError& e) {
    err << "bound exceeded: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace flasque
