#include "flasque/io/json_io.hpp"

#include <fstream>
#include <sstream>

#include "flasque/errors.hpp"

namespace flasque {

namespace {

void check_header(const Json& j, const std::string& kind) {
  if (!j.is_object()) throw InputError("expected a JSON object for " + kind);
  if (!j.contains("format") || j["format"] != kFormatVersion) {
    throw InputError(kind + ": missing or unsupported \"format\" (expected 1)");
  }
  if (json_kind(j) != kind) throw InputError("expected kind \"" + kind + "\", got \"" + json_kind(j) + "\"");
}

Json header(const std::string& kind) {
  Json j;
  j["format"] = kFormatVersion;
  j["kind"] = kind;
  return j;
}

const Json& field(const Json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) throw InputError(what + ": missing field \"" + key + "\"");
  return j[key];
}

std::string str(const Json& j, const std::string& what) {
  if (!j.is_string()) throw InputError(what + ": expected a string");
  return j.get<std::string>();
}

std::size_t count(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw InputError(what + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

Json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(v);
  }
  return v.str();
}

Integer integer_from(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError(what + ": expected an integer");
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

IntMatrix matrix_from(const Json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows) {
    throw InputError(what + ": expected " + std::to_string(rows) + " rows");
  }
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw InputError(what + ": row " + std::to_string(r) + " needs " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer_from(j[r][c], what);
  }
  return m;
}

PosetPtr site_of(const Json& j, PosetPtr site, const std::string& what) {
  if (j.contains("site")) return share(poset_from_json(j["site"]));
  if (!site) throw InputError(what + ": no \"site\" given");
  return site;
}

Point point_of(const FinPoset& p, const Json& j, const std::string& what) {
  std::string name = str(j, what);
  auto pt = p.find(name);
  if (!pt) throw InputError(what + ": unknown point \"" + name + "\"");
  return *pt;
}

}  // namespace

std::string json_kind(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw InputError("missing \"kind\" field");
  return j["kind"].get<std::string>();
}

Json to_json(const FinPoset& p) {
  Json j = header("poset");
  j["points"] = p.names();
  Json le = Json::array();
  for (const auto& [a, b] : p.hasse_edges()) le.push_back({p.name(a), p.name(b)});
  j["le"] = le;
  return j;
}

FinPoset poset_from_json(const Json& j) {
  check_header(j, "poset");
  const Json& pts = field(j, "points", "poset");
  if (!pts.is_array()) throw InputError("poset: \"points\" must be an array");
  std::vector<std::string> names;
  for (const auto& n : pts) names.push_back(str(n, "poset point"));
  std::vector<std::pair<std::string, std::string>> le;
  if (j.contains("le")) {
    for (const auto& e : j["le"]) {
      if (!e.is_array() || e.size() != 2) throw InputError("poset: each \"le\" entry is a pair [x, y]");
      le.emplace_back(str(e[0], "poset le"), str(e[1], "poset le"));
    }
  }
  return FinPoset::from_relation(names, le);
}

Json to_json(const FinCategory& c) {
  Json j = header("category");
  j["objects"] = c.object_names();
  Json arrows = Json::array();
  for (Arrow a = 0; a < c.arrow_count(); ++a) {
    const auto& d = c.arrow(a);
    arrows.push_back({{"name", d.name}, {"src", c.object_name(d.src)}, {"dst", c.object_name(d.dst)}});
  }
  j["arrows"] = arrows;
  Json ids = Json::object();
  for (Object o = 0; o < c.object_count(); ++o) ids[c.object_name(o)] = c.arrow(c.identity(o)).name;
  j["identities"] = ids;
  Json comp = Json::array();
  for (Arrow g = 0; g < c.arrow_count(); ++g) {
    for (Arrow f = 0; f < c.arrow_count(); ++f) {
      if (auto gf = c.compose(g, f); gf && g != c.identity(c.arrow(g).src) && f != c.identity(c.arrow(f).dst)) {
        comp.push_back({c.arrow(g).name, c.arrow(f).name, c.arrow(*gf).name});
      }
    }
  }
  j["compose"] = comp;
  Json inv = Json::array();
  for (const auto& [a, b] : c.claimed_inverses()) inv.push_back({c.arrow(a).name, c.arrow(b).name});
  if (!inv.empty()) j["inverses"] = inv;
  return j;
}

FinCategory category_from_json(const Json& j) {
  const std::string kind = json_kind(j);
  if (kind == "group") {
    check_header(j, "group");
    std::vector<std::string> elems;
    for (const auto& e : field(j, "elements", "group")) elems.push_back(str(e, "group element"));
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : field(j, "table", "group")) {
      std::vector<std::size_t> r;
      for (const auto& v : row) r.push_back(count(v, "group table"));
      table.push_back(r);
    }
    return FinCategory::from_group(elems, table);
  }
  check_header(j, "category");
  std::vector<std::string> objects;
  for (const auto& o : field(j, "objects", "category")) objects.push_back(str(o, "category object"));
  auto obj = [&](const Json& v) {
    std::string n = str(v, "category arrow end");
    for (Object o = 0; o < objects.size(); ++o) {
      if (objects[o] == n) return o;
    }
    throw InputError("category: unknown object \"" + n + "\"");
  };
  std::vector<FinCategory::ArrowData> arrows;
  for (const auto& a : field(j, "arrows", "category")) {
    arrows.push_back({str(field(a, "name", "category arrow"), "arrow name"), obj(field(a, "src", "category arrow")),
                      obj(field(a, "dst", "category arrow"))});
  }
  auto arr = [&](const Json& v) {
    std::string n = str(v, "category arrow");
    for (Arrow a = 0; a < arrows.size(); ++a) {
      if (arrows[a].name == n) return a;
    }
    throw InputError("category: unknown arrow \"" + n + "\"");
  };
  std::vector<Arrow> ids(objects.size());
  const Json& idj = field(j, "identities", "category");
  for (Object o = 0; o < objects.size(); ++o) ids[o] = arr(field(idj, objects[o], "category identities"));
  std::vector<std::tuple<Arrow, Arrow, Arrow>> comp;
  if (j.contains("compose")) {
    for (const auto& t : j["compose"]) {
      if (!t.is_array() || t.size() != 3) throw InputError("category: compose entries are [g, f, g∘f]");
      comp.emplace_back(arr(t[0]), arr(t[1]), arr(t[2]));
    }
  }
  FinCategory c(objects, arrows, ids, comp);
  if (j.contains("inverses")) {
    for (const auto& t : j["inverses"]) c.claim_inverse(arr(t[0]), arr(t[1]));
  }
  auto problems = check_category(c);
  if (!problems.empty()) throw InputError("category: " + problems.front());
  return c;
}

Json to_json(const MonotoneMap& f) {
  Json j = header("map");
  j["source"] = to_json(f.source());
  j["target"] = to_json(f.target());
  Json a = Json::object();
  for (Point x = 0; x < f.source().size(); ++x) a[f.source().name(x)] = f.target().name(f(x));
  j["assignment"] = a;
  return j;
}

MonotoneMap map_from_json(const Json& j) {
  check_header(j, "map");
  PosetPtr s = share(poset_from_json(field(j, "source", "map")));
  PosetPtr t = share(poset_from_json(field(j, "target", "map")));
  const Json& a = field(j, "assignment", "map");
  std::vector<Point> assign(s->size());
  for (Point x = 0; x < s->size(); ++x) assign[x] = point_of(*t, field(a, s->name(x), "map assignment"), "map");
  return MonotoneMap(s, t, assign);
}

Json to_json(const FPModule& m) {
  if (m.relations().rows() == 0) return m.generators();
  return {{"generators", m.generators()}, {"relations", matrix_json(m.relations())}};
}

FPModule module_from_json(const Json& j, const Ring& ring) {
  if (j.is_number()) return FPModule::free(ring, count(j, "module rank"));
  if (!j.is_object()) throw InputError("module: expected a rank or {generators, relations}");
  const std::size_t g = count(field(j, "generators", "module"), "module generators");
  IntMatrix rel(0, g);
  if (j.contains("relations")) rel = matrix_from(j["relations"], j["relations"].size(), g, "module relations");
  return FPModule(ring, g, rel);
}

Json to_json(const SetSheaf& f, bool embed_site) {
  const FinPoset& p = f.site();
  Json j = header("set-sheaf");
  if (embed_site) j["site"] = to_json(p);
  Json stalks = Json::object();
  for (Point x = 0; x < p.size(); ++x) stalks[p.name(x)] = f.labels()[x];
  j["stalks"] = stalks;
  Json maps = Json::array();
  for (const auto& [a, b] : p.hasse_edges()) {
    maps.push_back({{"from", p.name(a)}, {"to", p.name(b)}, {"map", f.comp(a, b)}});
  }
  j["maps"] = maps;
  return j;
}

SetSheaf set_sheaf_from_json(const Json& j, PosetPtr site) {
  check_header(j, "set-sheaf");
  PosetPtr p = site_of(j, site, "set-sheaf");
  const Json& st = field(j, "stalks", "set-sheaf");
  std::vector<std::size_t> sizes(p->size());
  std::vector<std::vector<std::string>> labels(p->size());
  for (Point x = 0; x < p->size(); ++x) {
    const Json& s = field(st, p->name(x), "set-sheaf stalks");
    if (s.is_array()) {
      for (const auto& l : s) labels[x].push_back(str(l, "stalk label"));
      sizes[x] = labels[x].size();
    } else {
      sizes[x] = count(s, "stalk size");
      for (std::size_t i = 0; i < sizes[x]; ++i) labels[x].push_back(std::to_string(i));
    }
  }
  std::map<std::pair<Point, Point>, SetMap> maps;
  if (j.contains("maps")) {
    for (const auto& m : j["maps"]) {
      const Point a = point_of(*p, field(m, "from", "set-sheaf map"), "set-sheaf map");
      const Point b = point_of(*p, field(m, "to", "set-sheaf map"), "set-sheaf map");
      SetMap map;
      for (const auto& v : field(m, "map", "set-sheaf map")) {
        if (v.is_string()) {
          const auto& lb = labels[b];
          auto it = std::find(lb.begin(), lb.end(), v.get<std::string>());
          if (it == lb.end()) throw InputError("set-sheaf map: unknown element \"" + v.get<std::string>() + "\"");
          map.push_back(static_cast<std::size_t>(it - lb.begin()));
        } else {
          map.push_back(count(v, "set-sheaf map entry"));
        }
      }
      maps[{a, b}] = map;
    }
  }
  return SetSheaf(p, sizes, maps, labels);
}

Json to_json(const ModSheaf& f, bool embed_site) {
  const FinPoset& p = f.site();
  Json j = header("module-sheaf");
  if (embed_site) j["site"] = to_json(p);
  j["ring"] = f.ring().name();
  Json stalks = Json::object();
  for (Point x = 0; x < p.size(); ++x) stalks[p.name(x)] = to_json(f.stalk(x));
  j["stalks"] = stalks;
  Json maps = Json::array();
  for (const auto& [e, m] : f.edge_maps()) {
    maps.push_back({{"from", p.name(e.first)}, {"to", p.name(e.second)}, {"matrix", matrix_json(m)}});
  }
  j["maps"] = maps;
  return j;
}

ModSheaf mod_sheaf_from_json(const Json& j, PosetPtr site) {
  check_header(j, "module-sheaf");
  PosetPtr p = site_of(j, site, "module-sheaf");
  Ring ring = Ring::parse(str(field(j, "ring", "module-sheaf"), "ring"));
  const Json& st = field(j, "stalks", "module-sheaf");
  std::vector<FPModule> stalks;
  for (Point x = 0; x < p->size(); ++x) stalks.push_back(module_from_json(field(st, p->name(x), "module-sheaf stalks"), ring));
  std::map<std::pair<Point, Point>, IntMatrix> maps;
  if (j.contains("maps")) {
    for (const auto& m : j["maps"]) {
      const Point a = point_of(*p, field(m, "from", "module-sheaf map"), "module-sheaf map");
      const Point b = point_of(*p, field(m, "to", "module-sheaf map"), "module-sheaf map");
      maps[{a, b}] = matrix_from(field(m, "matrix", "module-sheaf map"), stalks[b].generators(),
                                 stalks[a].generators(), "module-sheaf map " + p->name(a) + "<=" + p->name(b));
    }
  }
  return ModSheaf(p, ring, stalks, maps);
}

Json to_json(const SetPresheaf& f, bool embed_category) {
  const FinCategory& c = f.category();
  Json j = header("set-presheaf");
  if (embed_category) j["category"] = to_json(c);
  Json sets = Json::object();
  for (Object o = 0; o < c.object_count(); ++o) sets[c.object_name(o)] = f.labels()[o];
  j["sets"] = sets;
  Json act = Json::object();
  for (Arrow a = 0; a < c.arrow_count(); ++a) act[c.arrow(a).name] = f.action(a);
  j["action"] = act;
  return j;
}

SetPresheaf presheaf_from_json(const Json& j, CategoryPtr category) {
  check_header(j, "set-presheaf");
  CategoryPtr c = category;
  if (j.contains("category")) c = share(category_from_json(j["category"]));
  if (!c) throw InputError("set-presheaf: no \"category\" given");
  const Json& sets = field(j, "sets", "set-presheaf");
  std::vector<std::size_t> sizes(c->object_count());
  std::vector<std::vector<std::string>> labels(c->object_count());
  for (Object o = 0; o < c->object_count(); ++o) {
    for (const auto& l : field(sets, c->object_name(o), "set-presheaf sets")) labels[o].push_back(str(l, "label"));
    sizes[o] = labels[o].size();
  }
  const Json& act = field(j, "action", "set-presheaf");
  std::vector<SetMap> action(c->arrow_count());
  for (Arrow a = 0; a < c->arrow_count(); ++a) {
    if (!act.contains(c->arrow(a).name) && a == c->identity(c->arrow(a).src)) {
      for (std::size_t s = 0; s < sizes[c->arrow(a).src]; ++s) action[a].push_back(s);
      continue;
    }
    for (const auto& v : field(act, c->arrow(a).name, "set-presheaf action")) action[a].push_back(count(v, "action entry"));
  }
  return SetPresheaf(c, sizes, action, labels);
}

Json to_json(const CohomologyTable& t) {
  Json j = Json::object();
  for (std::size_t n = 0; n < t.groups.size(); ++n) j["H" + std::to_string(n)] = t.groups[n].describe();
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("JSON ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  try {
    return parse_json(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json round_trip(const Json& j) {
  const std::string kind = json_kind(j);
  if (kind == "poset") return to_json(poset_from_json(j));
  if (kind == "category" || kind == "group") return to_json(category_from_json(j));
  if (kind == "map") return to_json(map_from_json(j));
  if (kind == "set-sheaf") return to_json(set_sheaf_from_json(j), j.contains("site"));
  if (kind == "module-sheaf") return to_json(mod_sheaf_from_json(j), j.contains("site"));
  if (kind == "set-presheaf") return to_json(presheaf_from_json(j), j.contains("category"));
  throw InputError("unknown kind \"" + kind + "\"");
}

}  // namespace flasque
