#include "flasque/flabby/injective.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "flasque/errors.hpp"
#include "flasque/homalg/smith.hpp"

namespace flasque {

InjectivityReport injectivity_report(const FieldSheaf& i) {
  const FinPoset& ps = i.site();
  const fp::Elem p = i.prime();
  InjectivityReport rep;
  for (Point x = 0; x < ps.size(); ++x) {
    const Open ux = ps.minimal_open(x);
    const Open rad = ux.minus(Open::singleton(x));
    // Hom(rad P_x, I) = I(rad); Hom(P_x, I) = I_x. Ext¹ is the cokernel.
    FieldSheaf k = field_indicator(i.site_ptr(), p, rad);
    fp::Matrix sections = hom_basis(k, i, ps.whole());
    std::vector<std::size_t> off = hom_offsets(k, i, ps.whole());
    fp::Matrix image(off.back(), i.dim(x));
    for (Point y : rad.points()) {
      const fp::Matrix& c = i.comp(x, y);
      for (std::size_t r = 0; r < c.rows(); ++r) {
        for (std::size_t col = 0; col < c.cols(); ++col) image(off[y] + r, col) = c(r, col);
      }
    }
    const std::size_t ext = sections.cols() - fp::rank(image, p);
    rep.ext_dims.push_back(ext);
    if (ext != 0 && rep.injective) {
      rep.injective = false;
      rep.witness = x;
    }
  }
  return rep;
}

InjectivityReport injectivity_report(const ModSheaf& i) {
  if (!i.ring().is_prime_field()) {
    throw UnsupportedError("injectivity is decided only over Z/p, got " + i.ring().name());
  }
  return injectivity_report(to_field_sheaf(i));
}

bool is_injective_field(const FieldSheaf& i) { return injectivity_report(i).injective; }
bool is_injective_field(const ModSheaf& i) { return injectivity_report(i).injective; }

namespace {

// One block of congruences: rows live in the target stalk I_t.
struct Block {
  Point t;
  std::vector<std::map<std::size_t, Integer>> rows;
  IntVector rhs;
};

}  // namespace

std::optional<ModMorphism> extension_test(const ModSheaf& target, const ModMorphism& i, const ModMorphism& f) {
  const ModSheaf& b = i.target;
  const ModSheaf& a = i.source;
  const FinPoset& ps = b.site();
  const std::size_t n = ps.size();
  std::vector<std::size_t> off(n + 1, 0);
  for (Point x = 0; x < n; ++x) {
    off[x + 1] = off[x] + target.stalk(x).generators() * b.stalk(x).generators();
  }
  auto var = [&](Point x, std::size_t r, std::size_t c) { return off[x] + r * b.stalk(x).generators() + c; };
  std::vector<Block> blocks;
  auto new_block = [&](Point t) -> Block& {
    const std::size_t g = target.stalk(t).generators();
    blocks.push_back({t, std::vector<std::map<std::size_t, Integer>>(g), IntVector(g)});
    return blocks.back();
  };
  for (Point x = 0; x < n; ++x) {
    const std::size_t gi = target.stalk(x).generators(), gb = b.stalk(x).generators();
    IntMatrix rel = b.stalk(x).relation_columns();
    for (std::size_t k = 0; k < rel.cols(); ++k) {
      Block& blk = new_block(x);
      for (std::size_t r = 0; r < gi; ++r) {
        for (std::size_t c = 0; c < gb; ++c) {
          if (rel(c, k) != 0) blk.rows[r][var(x, r, c)] += rel(c, k);
        }
      }
    }
    const IntMatrix& ix = i.components[x];
    const IntMatrix& fx = f.components[x];
    for (std::size_t g = 0; g < a.stalk(x).generators(); ++g) {
      Block& blk = new_block(x);
      for (std::size_t r = 0; r < gi; ++r) {
        for (std::size_t c = 0; c < gb; ++c) {
          if (ix(c, g) != 0) blk.rows[r][var(x, r, c)] += ix(c, g);
        }
        blk.rhs[r] = fx(r, g);
      }
    }
  }
  for (const auto& [x, y] : ps.hasse_edges()) {
    const IntMatrix& im = target.comp(x, y);
    const IntMatrix& bm = b.comp(x, y);
    const std::size_t gix = target.stalk(x).generators(), giy = target.stalk(y).generators();
    const std::size_t gbx = b.stalk(x).generators(), gby = b.stalk(y).generators();
    for (std::size_t j = 0; j < gbx; ++j) {
      Block& blk = new_block(y);
      for (std::size_t r = 0; r < giy; ++r) {
        for (std::size_t k = 0; k < gix; ++k) {
          if (im(r, k) != 0) blk.rows[r][var(x, k, j)] += im(r, k);
        }
        for (std::size_t c = 0; c < gby; ++c) {
          if (bm(c, j) != 0) blk.rows[r][var(y, r, c)] -= bm(c, j);
        }
      }
    }
  }
  std::size_t total_rows = 0, total_cols = off[n];
  std::vector<IntMatrix> slack;
  for (const Block& blk : blocks) {
    total_rows += blk.rows.size();
    slack.push_back(target.stalk(blk.t).relation_columns());
    total_cols += slack.back().cols();
  }
  IntMatrix sys(total_rows, total_cols);
  IntVector rhs(total_rows);
  std::size_t row = 0, scol = off[n];
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Block& blk = blocks[k];
    for (std::size_t r = 0; r < blk.rows.size(); ++r) {
      for (const auto& [v, coef] : blk.rows[r]) sys(row + r, v) = coef;
      rhs[row + r] = blk.rhs[r];
      for (std::size_t s = 0; s < slack[k].cols(); ++s) sys(row + r, scol + s) = -slack[k](r, s);
    }
    row += blk.rows.size();
    scol += slack[k].cols();
  }
  std::optional<IntVector> sol = solve_integer(sys, rhs);
  if (!sol) return std::nullopt;
  ModMorphism g{b, target, {}};
  for (Point x = 0; x < n; ++x) {
    const std::size_t gi = target.stalk(x).generators(), gb = b.stalk(x).generators();
    IntMatrix m(gi, gb);
    for (std::size_t r = 0; r < gi; ++r) {
      for (std::size_t c = 0; c < gb; ++c) m(r, c) = (*sol)[var(x, r, c)];
    }
    if (!target.ring().is_integers()) m.reduce_mod(target.ring().modulus);
    g.components.push_back(std::move(m));
  }
  return g;
}

std::optional<SetMorphism> extension_test(const SetSheaf& target, const SetMorphism& i, const SetMorphism& f,
                                          std::size_t bound) {
  const SetSheaf& b = i.target;
  const FinPoset& ps = b.site();
  const std::size_t n = ps.size();
  std::vector<SetMap> g(n);
  std::vector<SetMap> forced(n);
  for (Point x = 0; x < n; ++x) {
    forced[x].assign(b.stalk_size(x), kUndefined);
    for (std::size_t s = 0; s < i.source.stalk_size(x); ++s) {
      std::size_t& slot = forced[x][i.components[x][s]];
      const std::size_t want = f.components[x][s];
      if (slot != kUndefined && slot != want) return std::nullopt;
      slot = want;
    }
  }
  const auto& lin = ps.linear_extension();
  std::vector<Point> order(lin.rbegin(), lin.rend());
  std::size_t nodes = 0;
  // Assign g at points in order, element by element.
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pi, std::size_t e) -> bool {
    if (pi == n) return true;
    const Point x = order[pi];
    if (e == 0) g[x].assign(b.stalk_size(x), kUndefined);
    if (e == b.stalk_size(x)) return rec(pi + 1, 0);
    if (++nodes > bound) throw BoundError("extension search exceeded " + std::to_string(bound) + " nodes");
    for (std::size_t v = 0; v < target.stalk_size(x); ++v) {
      if (forced[x][e] != kUndefined && forced[x][e] != v) continue;
      bool ok = true;
      for (Point y : ps.covers(x)) {
        if (target.apply(x, y, v) != g[y][b.apply(x, y, e)]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      g[x][e] = v;
      if (rec(pi, e + 1)) return true;
    }
    return false;
  };
  if (!rec(0, 0)) return std::nullopt;
  return SetMorphism{b, target, g};
}

FieldSheaf internal_hom(const FieldSheaf& t, const FieldSheaf& i) {
  const FinPoset& ps = t.site();
  const fp::Elem p = t.prime();
  const std::size_t n = ps.size();
  std::vector<fp::Matrix> basis(n);
  std::vector<std::size_t> dims(n);
  for (Point x = 0; x < n; ++x) {
    basis[x] = hom_basis(t, i, ps.minimal_open(x));
    dims[x] = basis[x].cols();
  }
  std::map<std::pair<Point, Point>, fp::Matrix> edges;
  for (const auto& [x, y] : ps.hasse_edges()) {
    const Open ux = ps.minimal_open(x), uy = ps.minimal_open(y);
    std::vector<std::size_t> ox = hom_offsets(t, i, ux), oy = hom_offsets(t, i, uy);
    fp::Solver solver(basis[y], p);
    fp::Matrix m(dims[y], dims[x]);
    for (std::size_t c = 0; c < dims[x]; ++c) {
      fp::Vec v(oy.back(), 0);
      for (Point z : uy.points()) {
        for (std::size_t k = 0; k < t.dim(z) * i.dim(z); ++k) v[oy[z] + k] = basis[x](ox[z] + k, c);
      }
      m.set_column(c, *solver.solve(v));
    }
    edges[{x, y}] = m;
  }
  return FieldSheaf(t.site_ptr(), p, dims, edges);
}

namespace {

std::size_t total_dim(const FieldSheaf& f) {
  return std::accumulate(f.dims().begin(), f.dims().end(), std::size_t{0});
}

std::vector<fp::Elem> restricted_key(const FieldSheaf& b, const FieldSubsheaf& a, Open u) {
  std::vector<fp::Elem> k;
  for (Point x : u.points()) k.push_back(static_cast<fp::Elem>(b.dim(x)));
  for (const auto& [e, m] : b.edges()) {
    if (!u.contains(e.first)) continue;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) k.push_back(m(r, c));
    }
  }
  k.push_back(-1);
  for (Point x : u.points()) {
    const fp::Matrix& m = a.inclusion[x];
    k.push_back(static_cast<fp::Elem>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) k.push_back(m(r, c));
    }
  }
  return k;
}

}  // namespace

MonoFamily build_mono_family(const PosetPtr& site, fp::Elem prime, std::size_t d) {
  MonoFamily fam;
  fam.site = site;
  fam.prime = prime;
  fam.bound = d;
  fam.objects = field_sheaves_up_to_iso(site, prime, d);
  for (std::size_t o = 0; o < fam.objects.size(); ++o) {
    for (FieldSubsheaf& s : all_subsheaves(fam.objects[o])) fam.monos.push_back({o, std::move(s)});
  }
  std::stable_sort(fam.monos.begin(), fam.monos.end(), [&](const MonoFamily::Mono& l, const MonoFamily::Mono& r) {
    const std::size_t lb = total_dim(fam.objects[l.object]), rb = total_dim(fam.objects[r.object]);
    if (lb != rb) return lb < rb;
    return total_dim(l.sub.sheaf) < total_dim(r.sub.sheaf);
  });
  fam.stage_monos.resize(site->size());
  for (Point x = 0; x < site->size(); ++x) {
    const Open ux = site->minimal_open(x);
    std::map<std::vector<fp::Elem>, std::size_t> seen;
    for (std::size_t k = 0; k < fam.monos.size(); ++k) {
      const auto& m = fam.monos[k];
      if (seen.emplace(restricted_key(fam.objects[m.object], m.sub, ux), k).second) {
        fam.stage_monos[x].push_back(k);
      }
    }
  }
  return fam;
}

FamilyReport internal_injective_family(const FieldSheaf& i, const MonoFamily& family) {
  FamilyReport rep;
  rep.bound = family.bound;
  const FinPoset& ps = i.site();
  for (Point x = 0; x < ps.size(); ++x) {
    const Open ux = ps.minimal_open(x);
    std::map<std::size_t, fp::Matrix> hom_b;
    for (std::size_t k : family.stage_monos[x]) {
      const auto& m = family.monos[k];
      const FieldSheaf& b = family.objects[m.object];
      auto it = hom_b.find(m.object);
      if (it == hom_b.end()) it = hom_b.emplace(m.object, hom_basis(b, i, ux)).first;
      ++rep.checks;
      if (!restriction_surjective(m.sub, b, i, ux, it->second)) {
        rep.passed = false;
        rep.witness = FamilyReport::Witness{b, m.sub, x};
        return rep;
      }
    }
  }
  return rep;
}

FamilyReport internal_injective_family(const ModSheaf& i, std::size_t d) {
  if (!i.ring().is_prime_field()) {
    throw UnsupportedError("internal injectivity needs Z/p coefficients, got " + i.ring().name());
  }
  FieldSheaf fi = to_field_sheaf(i);
  return internal_injective_family(fi, build_mono_family(i.site_ptr(), fi.prime(), d));
}

namespace {

std::string dims_text(const FieldSheaf& f) {
  std::ostringstream os;
  os << "(";
  for (Point x = 0; x < f.site().size(); ++x) os << (x ? "," : "") << f.site().name(x) << ":" << f.dim(x);
  os << ")";
  return os.str();
}

}  // namespace

std::string FamilyReport::describe() const {
  std::ostringstream os;
  if (passed) {
    os << "passed family at bound " << bound << " (" << checks << " stage checks)";
  } else {
    os << "failed: mono with dims " << dims_text(witness->a.sheaf) << " -> " << dims_text(witness->b)
       << " does not lift at stage " << witness->b.site().name(witness->stage);
  }
  return os.str();
}

}  // namespace flasque
