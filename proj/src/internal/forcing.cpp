#include "flasque/internal/forcing.hpp"

#include <algorithm>
#include <functional>

#include "flasque/errors.hpp"
#include "flasque/flabby/subterminal.hpp"

namespace flasque {

PowerObject power_le1(const SetPresheaf& x) {
  const FinCategory& cat = x.category();
  const std::size_t nobj = cat.object_count();
  // parts[c]: for each arrow into c (in arrows_into order) a value or kUndefined.
  std::vector<std::vector<std::vector<std::size_t>>> parts(nobj);
  for (Object c = 0; c < nobj; ++c) {
    const auto& into = cat.arrows_into(c);
    const std::size_t m = into.size();
    auto pos = [&](Arrow a) {
      return static_cast<std::size_t>(std::find(into.begin(), into.end(), a) - into.begin());
    };
    for (std::uint64_t sieve = 0; sieve < (std::uint64_t{1} << m); ++sieve) {
      bool closed = true;
      for (std::size_t i = 0; i < m && closed; ++i) {
        if (!((sieve >> i) & 1U)) continue;
        for (Arrow h : cat.arrows_into(cat.arrow(into[i]).src)) {
          if (!((sieve >> pos(*cat.compose(into[i], h))) & 1U)) {
            closed = false;
            break;
          }
        }
      }
      if (!closed) continue;
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < m; ++i) {
        if ((sieve >> i) & 1U) members.push_back(i);
      }
      std::vector<std::size_t> value(m, kUndefined);
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == members.size()) {
          for (std::size_t i : members) {
            for (Arrow h : cat.arrows_into(cat.arrow(into[i]).src)) {
              if (value[pos(*cat.compose(into[i], h))] != x.act(h, value[i])) return;
            }
          }
          parts[c].push_back(value);
          return;
        }
        const std::size_t i = members[k];
        for (std::size_t v = 0; v < x.size(cat.arrow(into[i]).src); ++v) {
          value[i] = v;
          rec(k + 1);
        }
        value[i] = kUndefined;
      };
      rec(0);
    }
    std::sort(parts[c].begin(), parts[c].end());
  }
  std::vector<std::size_t> sizes(nobj);
  std::vector<std::vector<std::string>> labels(nobj);
  for (Object c = 0; c < nobj; ++c) {
    sizes[c] = parts[c].size();
    const auto& into = cat.arrows_into(c);
    for (const auto& p : parts[c]) {
      std::string s = "{";
      bool first = true;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == kUndefined) continue;
        s += (first ? "" : ",") + cat.arrow(into[i]).name + "=" + x.label(cat.arrow(into[i]).src, p[i]);
        first = false;
      }
      labels[c].push_back(s + "}");
    }
  }
  std::vector<SetMap> action(cat.arrow_count());
  for (Arrow g = 0; g < cat.arrow_count(); ++g) {
    const Object c = cat.arrow(g).dst, d = cat.arrow(g).src;
    const auto& into_c = cat.arrows_into(c);
    const auto& into_d = cat.arrows_into(d);
    for (const auto& p : parts[c]) {
      std::vector<std::size_t> q(into_d.size(), kUndefined);
      for (std::size_t i = 0; i < into_d.size(); ++i) {
        const Arrow gh = *cat.compose(g, into_d[i]);
        q[i] = p[static_cast<std::size_t>(std::find(into_c.begin(), into_c.end(), gh) - into_c.begin())];
      }
      auto it = std::lower_bound(parts[d].begin(), parts[d].end(), q);
      action[g].push_back(static_cast<std::size_t>(it - parts[d].begin()));
    }
  }
  PowerObject out{SetPresheaf(x.category_ptr(), sizes, action, labels), {}};
  out.member.resize(nobj);
  for (Object c = 0; c < nobj; ++c) {
    const auto& into = cat.arrows_into(c);
    const std::size_t id = static_cast<std::size_t>(std::find(into.begin(), into.end(), cat.identity(c)) - into.begin());
    for (std::size_t k = 0; k < parts[c].size(); ++k) {
      if (parts[c][k][id] != kUndefined) out.member[c].insert({parts[c][k][id], k});
    }
  }
  return out;
}

Structure::Structure(CategoryPtr cat) : cat_(std::move(cat)) {}

Structure::Structure(PosetPtr p) : cat_(share(FinCategory::opposite_of(*p))), poset_(std::move(p)) {}

void Structure::add_object(const std::string& name, SetPresheaf x) {
  if (x.category_ptr() != cat_ && x.category().object_count() != cat_->object_count()) {
    throw InputError("object " + name + " lives on a different category");
  }
  if (objects_.count(name) || relations_.count(name)) throw InputError("name " + name + " already used");
  objects_.emplace(name, std::move(x));
}

void Structure::add_object(const std::string& name, const SetSheaf& x) {
  if (!poset_) throw InputError("sheaf objects need a structure over a poset");
  add_object(name, to_presheaf(x, cat_));
  sheaves_.emplace(name, x);
}

void Structure::add_relation(const std::string& name, std::vector<std::string> sorts,
                             std::vector<std::set<std::vector<std::size_t>>> tuples) {
  if (objects_.count(name) || relations_.count(name)) throw InputError("name " + name + " already used");
  if (tuples.size() != cat_->object_count()) throw InputError("relation " + name + " needs one tuple set per stage");
  for (const auto& s : sorts) {
    if (!objects_.count(s)) throw InputError("relation " + name + " uses unknown sort " + s);
  }
  for (Arrow a = 0; a < cat_->arrow_count(); ++a) {
    const Object c = cat_->arrow(a).dst, d = cat_->arrow(a).src;
    for (const auto& t : tuples[c]) {
      if (t.size() != sorts.size()) throw InputError("relation " + name + " has a tuple of the wrong length");
      std::vector<std::size_t> r(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        const SetPresheaf& x = objects_.at(sorts[i]);
        if (t[i] >= x.size(c)) throw InputError("relation " + name + " has an element outside its sort");
        r[i] = x.act(a, t[i]);
      }
      if (!tuples[d].count(r)) {
        throw InputError("relation " + name + " is not closed under " + cat_->arrow(a).name);
      }
    }
  }
  relations_.emplace(name, Relation{std::move(sorts), std::move(tuples)});
}

void Structure::add_proposition(const std::string& name, std::uint64_t stages) {
  std::vector<std::set<std::vector<std::size_t>>> t(cat_->object_count());
  for (Object c = 0; c < cat_->object_count(); ++c) {
    if ((stages >> c) & 1U) t[c].insert({});
  }
  add_relation(name, {}, std::move(t));
}

const SetPresheaf& Structure::object(const std::string& name) const {
  auto it = objects_.find(name);
  if (it == objects_.end()) throw InputError("unknown object " + name);
  return it->second;
}

const PowerObject& Structure::power(const std::string& name) const {
  auto it = powers_.find(name);
  if (it != powers_.end()) return *it->second;
  const SetPresheaf& x = object(name);
  auto p = std::make_shared<PowerObject>();
  if (auto sh = sheaves_.find(name); sh != sheaves_.end()) {
    SubterminalObject so = subterminal_object(sh->second);
    GenericSubterminal gen = generic_subterminal(sh->second, so);
    p->object = to_presheaf(so.sheaf, cat_);
    p->member.resize(cat_->object_count());
    for (Object c = 0; c < cat_->object_count(); ++c) {
      p->member[c].insert(gen.members[c].begin(), gen.members[c].end());
    }
  } else {
    *p = power_le1(x);
  }
  return *powers_.emplace(name, p).first->second;
}

const Structure::Relation* Structure::relation(const std::string& name) const {
  auto it = relations_.find(name);
  return it == relations_.end() ? nullptr : &it->second;
}

std::size_t Forcing::KeyHash::operator()(const std::vector<std::size_t>& k) const {
  std::size_t h = 1469598103934665603ULL;
  for (auto v : k) h = (h ^ v) * 1099511628211ULL;
  return h;
}

Forcing::Forcing(const Structure& s, FormulaPtr f, std::vector<std::pair<std::string, TypeExpr>> free) : s_(s) {
  std::map<std::string, std::size_t> scope;
  std::set<std::string> used;
  slot_types_.clear();
  for (const auto& [name, type] : free) {
    if (!used.insert(name).second) throw InputError("free variable " + name + " declared twice");
    scope[name] = slot_sort_.size();
    free_slots_.push_back(slot_sort_.size());
    slot_sort_.push_back(type.power ? &s_.power(type.object).object : &s_.object(type.object));
    slot_types_.push_back(type);
  }
  root_ = compile(*f, scope, used);
  const FinCategory& cat = s_.category();
  covers_.resize(cat.object_count());
  for (Object c = 0; c < cat.object_count(); ++c) {
    covers_[c].push_back(cat.identity(c));
    for (Arrow a : cat.arrows_into(c)) {
      if (a == cat.identity(c)) continue;
      for (Arrow g : cat.hom(c, cat.arrow(a).src)) {
        if (cat.compose(a, g) == cat.identity(c)) {
          covers_[c].push_back(a);
          break;
        }
      }
    }
  }
}

std::size_t Forcing::compile(const Formula& f, std::map<std::string, std::size_t>& scope, std::set<std::string>& used) {
  using K = Formula::Kind;
  auto where = [&]() {
    return f.line ? " (line " + std::to_string(f.line) + ", column " + std::to_string(f.column) + ")" : std::string();
  };
  auto lookup = [&](const std::string& v) {
    auto it = scope.find(v);
    if (it == scope.end()) throw InputError("unbound variable " + v + where());
    return it->second;
  };
  Node n;
  n.kind = f.kind;
  switch (f.kind) {
    case K::True:
    case K::False:
      break;
    case K::Eq: {
      const std::size_t a = lookup(f.terms[0]), b = lookup(f.terms[1]);
      if (!(slot_types_[a] == slot_types_[b])) {
        throw InputError("eq compares " + slot_types_[a].to_string() + " with " + slot_types_[b].to_string() + where());
      }
      n.args = {a, b};
      break;
    }
    case K::In: {
      const std::size_t a = lookup(f.terms[0]);
      const TypeExpr& ta = slot_types_[a];
      if (auto it = scope.find(f.terms[1]); it != scope.end()) {
        const TypeExpr& tb = slot_types_[it->second];
        if (!tb.power || tb.object != ta.object || ta.power) {
          throw InputError("in needs x : X and K : (P1 X), got " + ta.to_string() + " and " + tb.to_string() + where());
        }
        n.args = {a, it->second};
        n.power = &s_.power(tb.object);
      } else {
        const Structure::Relation* r = s_.relation(f.terms[1]);
        if (!r || r->sorts.size() != 1) throw InputError("in: " + f.terms[1] + " is neither a variable nor a unary relation" + where());
        if (ta.power || r->sorts[0] != ta.object) throw InputError("in: sort mismatch for " + f.terms[1] + where());
        n.kind = K::Rel;
        n.args = {a};
        n.relation = r;
      }
      break;
    }
    case K::Rel: {
      const Structure::Relation* r = s_.relation(f.name);
      if (!r) throw InputError("unknown relation " + f.name + where());
      if (r->sorts.size() != f.terms.size()) {
        throw InputError("relation " + f.name + " takes " + std::to_string(r->sorts.size()) + " arguments" + where());
      }
      for (std::size_t i = 0; i < f.terms.size(); ++i) {
        const std::size_t a = lookup(f.terms[i]);
        if (slot_types_[a].power || slot_types_[a].object != r->sorts[i]) {
          throw InputError("relation " + f.name + " argument " + std::to_string(i + 1) + " has the wrong sort" + where());
        }
        n.args.push_back(a);
      }
      n.relation = r;
      break;
    }
    case K::And:
    case K::Or:
    case K::Imp:
    case K::Not:
      for (const auto& c : f.sub) n.children.push_back(compile(*c, scope, used));
      break;
    case K::Forall:
    case K::Exists: {
      if (!used.insert(f.name).second) throw InputError("variable " + f.name + " bound twice" + where());
      if (!s_.has_object(f.type.object)) throw InputError("unknown object " + f.type.object + where());
      n.slot = slot_sort_.size();
      n.sort = f.type.power ? &s_.power(f.type.object).object : &s_.object(f.type.object);
      slot_sort_.push_back(n.sort);
      slot_types_.push_back(f.type);
      scope[f.name] = n.slot;
      n.children.push_back(compile(*f.sub[0], scope, used));
      scope.erase(f.name);
      break;
    }
  }
  std::set<std::size_t> fv(n.args.begin(), n.args.end());
  for (std::size_t c : n.children) fv.insert(nodes_[c].free.begin(), nodes_[c].free.end());
  if (f.kind == K::Forall || f.kind == K::Exists) fv.erase(n.slot);
  n.free.assign(fv.begin(), fv.end());
  nodes_.push_back(std::move(n));
  return nodes_.size() - 1;
}

bool Forcing::eval_at(std::size_t node, Arrow f, std::vector<std::size_t>& env) {
  const Node& n = nodes_[node];
  std::vector<std::size_t> saved;
  saved.reserve(n.free.size());
  for (std::size_t s : n.free) {
    saved.push_back(env[s]);
    env[s] = slot_sort_[s]->act(f, env[s]);
  }
  const bool r = eval(node, s_.category().arrow(f).src, env);
  for (std::size_t i = 0; i < n.free.size(); ++i) env[n.free[i]] = saved[i];
  return r;
}

bool Forcing::eval(std::size_t node, Object c, std::vector<std::size_t>& env) {
  using K = Formula::Kind;
  const Node& n = nodes_[node];
  std::vector<std::size_t> key{node, c};
  for (std::size_t s : n.free) key.push_back(env[s]);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const FinCategory& cat = s_.category();
  bool result = false;
  switch (n.kind) {
    case K::True:
      result = true;
      break;
    case K::False:
      result = false;
      break;
    case K::Eq:
      result = env[n.args[0]] == env[n.args[1]];
      break;
    case K::In:
      result = n.power->member[c].count({env[n.args[0]], env[n.args[1]]}) != 0;
      break;
    case K::Rel: {
      std::vector<std::size_t> t;
      for (std::size_t a : n.args) t.push_back(env[a]);
      result = n.relation->tuples[c].count(t) != 0;
      break;
    }
    case K::And:
      result = true;
      for (std::size_t ch : n.children) {
        if (!eval(ch, c, env)) {
          result = false;
          break;
        }
      }
      break;
    case K::Or:
      for (Arrow f : covers_[c]) {
        for (std::size_t ch : n.children) {
          if (eval_at(ch, f, env)) {
            result = true;
            break;
          }
        }
        if (result) break;
      }
      break;
    case K::Imp:
      result = true;
      for (Arrow f : cat.arrows_into(c)) {
        if (eval_at(n.children[0], f, env) && !eval_at(n.children[1], f, env)) {
          result = false;
          break;
        }
      }
      break;
    case K::Not:
      result = true;
      for (Arrow f : cat.arrows_into(c)) {
        if (eval_at(n.children[0], f, env)) {
          result = false;
          break;
        }
      }
      break;
    case K::Forall:
    case K::Exists: {
      const bool universal = n.kind == K::Forall;
      result = universal;
      const std::vector<Arrow>& arrows = universal ? cat.arrows_into(c) : covers_[c];
      const std::size_t body = n.children[0];
      std::vector<std::size_t> saved;
      for (std::size_t s : n.free) saved.push_back(env[s]);
      for (Arrow f : arrows) {
        const Object d = cat.arrow(f).src;
        for (std::size_t i = 0; i < n.free.size(); ++i) env[n.free[i]] = slot_sort_[n.free[i]]->act(f, saved[i]);
        for (std::size_t t = 0; t < n.sort->size(d); ++t) {
          env[n.slot] = t;
          if (eval(body, d, env) != universal) {
            result = !universal;
            break;
          }
        }
        if (result != universal) break;
      }
      for (std::size_t i = 0; i < n.free.size(); ++i) env[n.free[i]] = saved[i];
      break;
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

bool Forcing::force(Object stage, const std::vector<std::size_t>& env) {
  if (stage >= s_.category().object_count()) throw InputError("unknown stage");
  if (env.size() != free_slots_.size()) throw InputError("environment does not match the free variables");
  std::vector<std::size_t> full(slot_sort_.size(), 0);
  for (std::size_t i = 0; i < env.size(); ++i) {
    if (env[i] >= slot_sort_[free_slots_[i]]->size(stage)) throw InputError("environment value outside its sort");
    full[free_slots_[i]] = env[i];
  }
  return eval(root_, stage, full);
}

bool Forcing::holds_globally() { return failing_stages().empty(); }

std::vector<Object> Forcing::failing_stages() {
  if (!free_slots_.empty()) throw InputError("holds_globally needs a closed formula");
  std::vector<Object> out;
  for (Object c = 0; c < s_.category().object_count(); ++c) {
    if (!force(c)) out.push_back(c);
  }
  return out;
}

}  // namespace flasque
