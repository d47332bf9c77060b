#include "flasque/flabby/field_sheaf.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

#include "flasque/errors.hpp"

namespace flasque {

FieldSheaf::FieldSheaf(PosetPtr site, fp::Elem p, std::vector<std::size_t> dims,
                       std::map<std::pair<Point, Point>, fp::Matrix> edges)
    : site_(std::move(site)), p_(p), dims_(std::move(dims)), edges_(std::move(edges)) {
  const FinPoset& ps = *site_;
  const std::size_t n = ps.size();
  if (dims_.size() != n) throw InputError("one dimension per point required");
  for (const auto& [a, b] : ps.hasse_edges()) {
    auto it = edges_.find({a, b});
    if (it == edges_.end()) {
      edges_[{a, b}] = fp::Matrix(dims_[b], dims_[a]);
    } else if (it->second.rows() != dims_[b] || it->second.cols() != dims_[a]) {
      throw InputError("edge matrix " + ps.name(a) + "<=" + ps.name(b) + " has the wrong shape");
    }
  }
  comps_.assign(n * n, fp::Matrix());
  for (Point x = 0; x < n; ++x) comps_[x * n + x] = fp::Matrix::identity(dims_[x]);
  const auto& lin = ps.linear_extension();
  for (auto it = lin.rbegin(); it != lin.rend(); ++it) {
    const Point x = *it;
    for (Point y : ps.minimal_open(x).points()) {
      if (y == x) continue;
      bool have = false;
      fp::Matrix result;
      for (Point z : ps.covers(x)) {
        if (!ps.le(z, y)) continue;
        fp::Matrix c = fp::multiply(comps_[z * n + y], edges_.at({x, z}), p_);
        if (!have) {
          result = std::move(c);
          have = true;
        } else if (!(c == result)) {
          throw InputError("functoriality fails for " + ps.name(x) + "<=" + ps.name(y));
        }
      }
      comps_[x * n + y] = std::move(result);
    }
  }
}

std::vector<fp::Elem> FieldSheaf::key() const {
  std::vector<fp::Elem> k;
  for (std::size_t d : dims_) k.push_back(static_cast<fp::Elem>(d));
  for (const auto& [e, m] : edges_) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) k.push_back(m(r, c));
    }
  }
  return k;
}

FieldSheaf to_field_sheaf(const ModSheaf& f) {
  const fp::Elem p = f.ring().prime();
  const FinPoset& ps = f.site();
  std::vector<CokernelResult> simple;
  std::vector<std::size_t> dims;
  for (Point x = 0; x < ps.size(); ++x) {
    simple.push_back(cokernel(IntMatrix(f.stalk(x).generators(), 0), f.stalk(x)));
    dims.push_back(simple.back().module.generators());
  }
  std::map<std::pair<Point, Point>, fp::Matrix> edges;
  for (const auto& [a, b] : ps.hasse_edges()) {
    edges[{a, b}] = fp::Matrix::from_int(simple[b].projection * f.comp(a, b) * simple[a].lift, p);
  }
  return FieldSheaf(f.site_ptr(), p, dims, edges);
}

ModSheaf to_mod_sheaf(const FieldSheaf& f) {
  Ring ring = Ring::mod(f.prime());
  std::vector<FPModule> stalks;
  for (std::size_t d : f.dims()) stalks.push_back(FPModule::free(ring, d));
  std::map<std::pair<Point, Point>, IntMatrix> maps;
  for (const auto& [e, m] : f.edges()) maps[e] = m.to_int();
  return ModSheaf(f.site_ptr(), ring, stalks, maps);
}

FieldSheaf field_indicator(const PosetPtr& p, fp::Elem prime, Open u) {
  std::vector<std::size_t> dims(p->size(), 0);
  for (Point x : u.points()) dims[x] = 1;
  std::map<std::pair<Point, Point>, fp::Matrix> edges;
  for (const auto& [a, b] : p->hasse_edges()) {
    fp::Matrix m(dims[b], dims[a]);
    if (dims[a] == 1 && dims[b] == 1) m(0, 0) = 1;
    edges[{a, b}] = m;
  }
  return FieldSheaf(p, prime, dims, edges);
}

std::vector<std::size_t> hom_offsets(const FieldSheaf& a, const FieldSheaf& b, Open u) {
  std::vector<std::size_t> off(a.site().size() + 1, 0);
  std::size_t total = 0;
  for (Point x = 0; x < a.site().size(); ++x) {
    off[x] = total;
    if (u.contains(x)) total += a.dim(x) * b.dim(x);
  }
  off[a.site().size()] = total;
  return off;
}

fp::Matrix hom_basis(const FieldSheaf& a, const FieldSheaf& b, Open u) {
  const FinPoset& ps = a.site();
  const fp::Elem p = a.prime();
  std::vector<std::size_t> off = hom_offsets(a, b, u);
  const std::size_t unknowns = off.back();
  std::size_t rows = 0;
  for (const auto& [x, y] : ps.hasse_edges()) {
    if (u.contains(x)) rows += b.dim(y) * a.dim(x);
  }
  fp::Matrix eq(rows, unknowns);
  std::size_t row = 0;
  for (const auto& [x, y] : ps.hasse_edges()) {
    if (!u.contains(x)) continue;
    const fp::Matrix& bm = b.comp(x, y);
    const fp::Matrix& am = a.comp(x, y);
    const std::size_t da_x = a.dim(x), db_x = b.dim(x), da_y = a.dim(y);
    for (std::size_t r = 0; r < b.dim(y); ++r) {
      for (std::size_t c = 0; c < da_x; ++c) {
        // (B φ_x)[r][c] - (φ_y A)[r][c]
        for (std::size_t k = 0; k < db_x; ++k) {
          fp::Elem& e = eq(row, off[x] + k * da_x + c);
          e = (e + bm(r, k)) % p;
        }
        for (std::size_t k = 0; k < da_y; ++k) {
          fp::Elem& e = eq(row, off[y] + r * da_y + k);
          e = (e + p - am(k, c)) % p;
        }
        ++row;
      }
    }
  }
  return fp::kernel(eq, p);
}

std::vector<fp::Matrix> all_subspaces(std::size_t n, fp::Elem p) {
  std::vector<fp::Matrix> out;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) piv.push_back(i);
    }
    // Free entries: row j (pivot piv[j]) at columns c > piv[j] that are not pivots.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t j = 0; j < piv.size(); ++j) {
      for (std::size_t c = piv[j] + 1; c < n; ++c) {
        if (!((mask >> c) & 1U)) free.emplace_back(j, c);
      }
    }
    std::size_t combos = 1;
    for (std::size_t i = 0; i < free.size(); ++i) combos *= static_cast<std::size_t>(p);
    for (std::size_t code = 0; code < combos; ++code) {
      fp::Matrix basis(n, piv.size());
      for (std::size_t j = 0; j < piv.size(); ++j) basis(piv[j], j) = 1;
      std::size_t c = code;
      for (const auto& [j, col] : free) {
        basis(col, j) = static_cast<fp::Elem>(c % static_cast<std::size_t>(p));
        c /= static_cast<std::size_t>(p);
      }
      out.push_back(basis);
    }
  }
  return out;
}

std::vector<FieldSubsheaf> all_subsheaves(const FieldSheaf& b) {
  const FinPoset& ps = b.site();
  const fp::Elem p = b.prime();
  const std::size_t n = ps.size();
  std::vector<std::vector<fp::Matrix>> choices(n);
  for (Point x = 0; x < n; ++x) choices[x] = all_subspaces(b.dim(x), p);
  std::vector<FieldSubsheaf> out;
  std::vector<const fp::Matrix*> pick(n, nullptr);
  const auto& lin = ps.linear_extension();
  // Choose maximal points first so closure can be tested edge by edge.
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      std::vector<std::size_t> dims(n);
      std::vector<fp::Matrix> inc(n);
      for (Point x = 0; x < n; ++x) {
        dims[x] = pick[x]->cols();
        inc[x] = *pick[x];
      }
      std::map<std::pair<Point, Point>, fp::Matrix> edges;
      for (const auto& [x, y] : ps.hasse_edges()) {
        fp::Matrix img = fp::multiply(b.comp(x, y), inc[x], p);
        fp::Solver solver(inc[y], p);
        fp::Matrix m(dims[y], dims[x]);
        for (std::size_t c = 0; c < dims[x]; ++c) m.set_column(c, *solver.solve(img.column(c)));
        edges[{x, y}] = m;
      }
      out.push_back({FieldSheaf(b.site_ptr(), p, dims, edges), inc});
      return;
    }
    const Point x = lin[n - 1 - i];
    for (const auto& s : choices[x]) {
      bool closed = true;
      for (Point y : ps.covers(x)) {
        fp::Matrix img = fp::multiply(b.comp(x, y), s, p);
        fp::Solver solver(*pick[y], p);
        for (std::size_t c = 0; c < img.cols() && closed; ++c) {
          if (!solver.solve(img.column(c))) closed = false;
        }
        if (!closed) break;
      }
      if (!closed) continue;
      pick[x] = &s;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

FieldQuotient field_quotient(const FieldSheaf& b, const FieldSubsheaf& a) {
  const FinPoset& ps = b.site();
  const fp::Elem p = b.prime();
  std::vector<fp::Matrix> q(ps.size()), r(ps.size());
  std::vector<std::size_t> dims(ps.size());
  for (Point x = 0; x < ps.size(); ++x) {
    const fp::Matrix& s = a.inclusion[x];
    fp::Matrix st(s.cols(), s.rows());
    for (std::size_t i = 0; i < s.rows(); ++i) {
      for (std::size_t j = 0; j < s.cols(); ++j) st(j, i) = s(i, j);
    }
    fp::Matrix k = fp::kernel(st, p);
    fp::Matrix qx(k.cols(), k.rows());
    for (std::size_t i = 0; i < k.rows(); ++i) {
      for (std::size_t j = 0; j < k.cols(); ++j) qx(j, i) = k(i, j);
    }
    dims[x] = qx.rows();
    fp::Solver solver(qx, p);
    fp::Matrix rx(qx.cols(), qx.rows());
    for (std::size_t c = 0; c < qx.rows(); ++c) {
      fp::Vec e(qx.rows(), 0);
      e[c] = 1;
      rx.set_column(c, *solver.solve(e));
    }
    q[x] = std::move(qx);
    r[x] = std::move(rx);
  }
  std::map<std::pair<Point, Point>, fp::Matrix> edges;
  for (const auto& [x, y] : ps.hasse_edges()) {
    edges[{x, y}] = fp::multiply(fp::multiply(q[y], b.comp(x, y), p), r[x], p);
  }
  return {FieldSheaf(b.site_ptr(), p, dims, edges), q};
}

ShortExact field_short_exact(const FieldSheaf& b, const FieldSubsheaf& a) {
  FieldQuotient c = field_quotient(b, a);
  ModSheaf ma = to_mod_sheaf(a.sheaf);
  ModSheaf mb = to_mod_sheaf(b);
  ModSheaf mc = to_mod_sheaf(c.sheaf);
  ModMorphism i{ma, mb, {}};
  ModMorphism pr{mb, mc, {}};
  for (Point x = 0; x < b.site().size(); ++x) {
    i.components.push_back(a.inclusion[x].to_int());
    pr.components.push_back(c.projection[x].to_int());
  }
  i.validate();
  pr.validate();
  return {i, pr};
}

bool restriction_surjective(const FieldSubsheaf& a, const FieldSheaf& b, const FieldSheaf& i, Open u) {
  return restriction_surjective(a, b, i, u, hom_basis(b, i, u));
}

bool restriction_surjective(const FieldSubsheaf& a, const FieldSheaf& b, const FieldSheaf& i, Open u,
                            const fp::Matrix& hb) {
  const fp::Elem p = b.prime();
  fp::Matrix ha = hom_basis(a.sheaf, i, u);
  if (ha.cols() == 0) return true;
  std::vector<std::size_t> offb = hom_offsets(b, i, u);
  std::vector<std::size_t> offa = hom_offsets(a.sheaf, i, u);
  fp::Matrix images(offa.back(), hb.cols());
  for (std::size_t col = 0; col < hb.cols(); ++col) {
    for (Point x : u.points()) {
      const std::size_t di = i.dim(x), db = b.dim(x), da = a.sheaf.dim(x);
      const fp::Matrix& inc = a.inclusion[x];
      for (std::size_t r = 0; r < di; ++r) {
        for (std::size_t c = 0; c < da; ++c) {
          fp::Elem acc = 0;
          for (std::size_t k = 0; k < db; ++k) acc = (acc + hb(offb[x] + r * db + k, col) * inc(k, c)) % p;
          images(offa[x] + r * da + c, col) = acc;
        }
      }
    }
  }
  return fp::rank(images, p) == ha.cols();
}

std::vector<FieldSheaf> all_field_sheaves(const PosetPtr& ps, fp::Elem prime, std::size_t max_dim) {
  const std::size_t n = ps->size();
  const auto edges = ps->hasse_edges();
  std::vector<FieldSheaf> out;
  std::vector<std::size_t> dims(n, 0);
  std::function<void(std::size_t)> over_dims = [&](std::size_t i) {
    if (i < n) {
      for (std::size_t d = 0; d <= max_dim; ++d) {
        dims[i] = d;
        over_dims(i + 1);
      }
      return;
    }
    std::size_t entries = 0;
    for (const auto& [a, b] : edges) entries += dims[a] * dims[b];
    std::vector<fp::Elem> vals(entries, 0);
    for (;;) {
      std::map<std::pair<Point, Point>, fp::Matrix> m;
      std::size_t k = 0;
      for (const auto& [a, b] : edges) {
        fp::Matrix mat(dims[b], dims[a]);
        for (std::size_t r = 0; r < dims[b]; ++r) {
          for (std::size_t c = 0; c < dims[a]; ++c) mat(r, c) = vals[k++];
        }
        m[{a, b}] = mat;
      }
      try {
        out.emplace_back(ps, prime, dims, m);
      } catch (const InputError&) {
        // composites disagree: not a representation
      }
      std::size_t pos = 0;
      while (pos < entries && ++vals[pos] == prime) vals[pos++] = 0;
      if (pos == entries) break;
    }
  };
  over_dims(0);
  return out;
}

namespace {

std::vector<fp::Matrix> gl_generators(std::size_t d, fp::Elem p) {
  std::vector<fp::Matrix> gens;
  if (d == 0) return gens;
  fp::Elem root = 1;
  for (fp::Elem g = 2; g < p; ++g) {
    fp::Elem x = g;
    std::size_t order = 1;
    while (x != 1) {
      x = x * g % p;
      ++order;
    }
    if (order == static_cast<std::size_t>(p - 1)) {
      root = g;
      break;
    }
  }
  if (p == 2) root = 1;
  if (root != 1) {
    fp::Matrix m = fp::Matrix::identity(d);
    m(0, 0) = root;
    gens.push_back(m);
  }
  for (std::size_t i = 0; i + 1 < d; ++i) {
    fp::Matrix t = fp::Matrix::identity(d);
    t(i, i + 1) = 1;
    gens.push_back(t);
    fp::Matrix s = fp::Matrix::identity(d);
    s(i, i) = 0;
    s(i + 1, i + 1) = 0;
    s(i, i + 1) = 1;
    s(i + 1, i) = 1;
    gens.push_back(s);
  }
  return gens;
}

fp::Matrix invert(const fp::Matrix& m, fp::Elem p) {
  fp::Solver s(m, p);
  fp::Matrix inv(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    fp::Vec e(m.rows(), 0);
    e[i] = 1;
    inv.set_column(i, *s.solve(e));
  }
  return inv;
}

struct KeyHash {
  std::size_t operator()(const std::vector<fp::Elem>& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

std::vector<FieldSheaf> field_sheaves_up_to_iso(const PosetPtr& ps, fp::Elem prime, std::size_t max_dim) {
  std::vector<FieldSheaf> labeled = all_field_sheaves(ps, prime, max_dim);
  std::unordered_map<std::vector<fp::Elem>, std::size_t, KeyHash> index;
  for (std::size_t i = 0; i < labeled.size(); ++i) index.emplace(labeled[i].key(), i);
  std::vector<bool> seen(labeled.size(), false);
  std::vector<FieldSheaf> reps;
  const auto edges = ps->hasse_edges();
  for (std::size_t start = 0; start < labeled.size(); ++start) {
    if (seen[start]) continue;
    reps.push_back(labeled[start]);
    seen[start] = true;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const FieldSheaf cur = labeled[queue.front()];
      queue.pop_front();
      for (Point x = 0; x < ps->size(); ++x) {
        for (const fp::Matrix& g : gl_generators(cur.dim(x), prime)) {
          fp::Matrix ginv = invert(g, prime);
          std::map<std::pair<Point, Point>, fp::Matrix> m = cur.edges();
          for (auto& [e, mat] : m) {
            if (e.first == x) mat = fp::multiply(mat, ginv, prime);
            if (e.second == x) mat = fp::multiply(g, mat, prime);
          }
          FieldSheaf next(ps, prime, cur.dims(), m);
          auto it = index.find(next.key());
          if (it == index.end()) throw InputError("orbit left the labeled family");
          if (!seen[it->second]) {
            seen[it->second] = true;
            queue.push_back(it->second);
          }
        }
      }
    }
  }
  return reps;
}

}  // namespace flasque
