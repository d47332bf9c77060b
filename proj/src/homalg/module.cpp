#include "flasque/homalg/module.hpp"

#include <limits>

#include "flasque/errors.hpp"

namespace flasque {

Ring Ring::mod(const Integer& m) {
  if (m < 2) throw InputError("ring modulus must be at least 2");
  return Ring{m};
}

Ring Ring::parse(const std::string& s) {
  if (s == "Z") return integers();
  if (s.rfind("Z/", 0) == 0 && s.size() > 2) {
    Integer m = 0;
    for (char c : s.substr(2)) {
      if (c < '0' || c > '9') throw InputError("bad ring '" + s + "'");
      m = m * 10 + (c - '0');
    }
    return mod(m);
  }
  throw InputError("bad ring '" + s + "' (expected Z or Z/m)");
}

bool Ring::is_prime_field() const { return modulus != 0 && fp::is_prime(modulus); }

fp::Elem Ring::prime() const {
  if (!is_prime_field()) throw UnsupportedError("ring " + name() + " is not a prime field");
  return static_cast<fp::Elem>(modulus);
}

std::string Ring::name() const { return modulus == 0 ? "Z" : "Z/" + modulus.str(); }

struct FPModule::Cache {
  // Prime field: solver for the relation subspace. Otherwise an echelon
  // form of the relation lattice.
  std::optional<fp::Solver> field;
  std::optional<ColumnEchelon> lattice;
};

FPModule::FPModule(Ring ring, std::size_t generators, IntMatrix relations)
    : ring_(std::move(ring)), gens_(generators), relations_(std::move(relations)) {
  if (relations_.rows() == 0) relations_ = IntMatrix(0, gens_);
  if (relations_.cols() != gens_) throw InputError("relation matrix width does not match generator count");
  if (!ring_.is_integers()) relations_.reduce_mod(ring_.modulus);
  auto cache = std::make_shared<Cache>();
  if (ring_.is_prime_field()) {
    cache->field.emplace(fp::Matrix::from_int(relations_.transposed(), ring_.prime()), ring_.prime());
  } else {
    cache->lattice.emplace(column_echelon(relation_columns()));
  }
  cache_ = std::move(cache);
}

FPModule FPModule::free(Ring ring, std::size_t rank) { return FPModule(std::move(ring), rank, IntMatrix(0, rank)); }

FPModule FPModule::cyclic(Ring ring, const Integer& d) {
  IntMatrix rel(1, 1);
  rel(0, 0) = d;
  return FPModule(std::move(ring), 1, std::move(rel));
}

FPModule FPModule::direct_sum(const std::vector<FPModule>& parts) {
  if (parts.empty()) return zero(Ring::integers());
  std::vector<IntMatrix> blocks;
  std::size_t g = 0;
  for (const auto& p : parts) {
    if (!(p.ring() == parts.front().ring())) throw InputError("direct sum of modules over different rings");
    blocks.push_back(p.relations());
    g += p.generators();
  }
  IntMatrix rel = block_diagonal(blocks);
  if (rel.cols() != g) rel = IntMatrix(rel.rows(), g);
  return FPModule(parts.front().ring(), g, std::move(rel));
}

IntMatrix FPModule::relation_columns() const {
  IntMatrix cols = relations_.transposed();
  if (cols.rows() != gens_) cols = IntMatrix(gens_, 0);
  if (!ring_.is_integers()) {
    IntMatrix m = IntMatrix::identity(gens_);
    for (std::size_t i = 0; i < gens_; ++i) m(i, i) = ring_.modulus;
    cols = hstack(cols, m);
  }
  return cols;
}

bool FPModule::in_relations(const IntVector& v) const {
  if (v.size() != gens_) throw InputError("element has wrong length");
  if (cache_->field) {
    fp::Vec b(v.size());
    const Integer p = ring_.modulus;
    for (std::size_t i = 0; i < v.size(); ++i) b[i] = static_cast<fp::Elem>(mod_floor(v[i], p));
    return cache_->field->solve(b).has_value();
  }
  return solve_integer(*cache_->lattice, v).has_value();
}

IntVector FPModule::reduce(IntVector v) const {
  if (!ring_.is_integers()) {
    for (auto& x : v) x = mod_floor(x, ring_.modulus);
  }
  return v;
}

bool FPModule::is_zero() const {
  if (cache_->field) return cache_->field->rank() == gens_;
  const auto& e = *cache_->lattice;
  if (e.rank != gens_) return false;
  for (std::size_t j = 0; j < e.rank; ++j) {
    if (e.H(e.pivot_rows[j], j) != 1) return false;
  }
  return true;
}

bool FPModule::is_finite() const { return free_rank() == 0; }

IntVector FPModule::torsion() const {
  IntVector out;
  for (const auto& d : invariant_factors(relation_columns())) {
    if (d > 1) out.push_back(d);
  }
  return out;
}

std::size_t FPModule::free_rank() const {
  if (cache_->field) return 0;
  return gens_ - cache_->lattice->rank;
}

std::optional<Integer> FPModule::order() const {
  if (!is_finite()) return std::nullopt;
  if (cache_->field) {
    Integer n = 1;
    for (std::size_t i = cache_->field->rank(); i < gens_; ++i) n *= ring_.modulus;
    return n;
  }
  Integer n = 1;
  for (const auto& d : torsion()) n *= d;
  return n;
}

std::string FPModule::describe() const {
  const std::size_t r = free_rank();
  IntVector tors = torsion();
  std::vector<std::string> parts;
  if (r == 1) parts.push_back("Z");
  if (r > 1) parts.push_back("Z^" + std::to_string(r));
  for (const auto& d : tors) parts.push_back("Z/" + d.str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " (+) " + parts[i];
  return s;
}

bool is_homomorphism(const IntMatrix& m, const FPModule& source, const FPModule& target) {
  if (m.rows() != target.generators() || m.cols() != source.generators()) return false;
  IntMatrix rel = source.relation_columns();
  for (std::size_t c = 0; c < rel.cols(); ++c) {
    if (!target.in_relations(m * rel.column(c))) return false;
  }
  return true;
}

bool maps_equal(const IntMatrix& a, const IntMatrix& b, const FPModule& target) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (!target.in_relations(a.column(c) - b.column(c))) return false;
  }
  return true;
}

IntMatrix zero_map(const FPModule& source, const FPModule& target) {
  return IntMatrix(target.generators(), source.generators());
}

namespace {

fp::Vec to_fp(const IntVector& v, fp::Elem p) {
  fp::Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<fp::Elem>(mod_floor(v[i], Integer(p)));
  return out;
}

}  // namespace

std::optional<IntVector> preimage(const IntMatrix& m, const FPModule& target, const IntVector& b) {
  const std::size_t gs = m.cols();
  if (target.ring().is_prime_field()) {
    const fp::Elem p = target.ring().prime();
    fp::Matrix a = fp::hstack(fp::Matrix::from_int(m, p), fp::Matrix::from_int(target.relation_columns(), p));
    auto z = fp::solve(a, to_fp(b, p), p);
    if (!z) return std::nullopt;
    return IntVector(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(gs));
  }
  auto z = solve_integer(hstack(m, target.relation_columns()), b);
  if (!z) return std::nullopt;
  IntVector x(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(gs));
  return target.ring().is_integers() ? x : FPModule::free(target.ring(), gs).reduce(std::move(x));
}

bool is_surjective(const IntMatrix& m, const FPModule& target) {
  const std::size_t g = target.generators();
  if (target.ring().is_prime_field()) {
    const fp::Elem p = target.ring().prime();
    fp::Matrix a = fp::hstack(fp::Matrix::from_int(m, p), fp::Matrix::from_int(target.relation_columns(), p));
    return fp::rank(a, p) == g;
  }
  ColumnEchelon e = column_echelon(hstack(m, target.relation_columns()));
  if (e.rank != g) return false;
  for (std::size_t j = 0; j < g; ++j) {
    if (e.H(e.pivot_rows[j], j) != 1) return false;
  }
  return true;
}

KernelResult kernel(const IntMatrix& m, const FPModule& source, const FPModule& target) {
  const std::size_t gs = source.generators();
  const Ring& ring = source.ring();
  if (ring.is_prime_field()) {
    const fp::Elem p = ring.prime();
    fp::Matrix a = fp::hstack(fp::Matrix::from_int(m, p), fp::Matrix::from_int(target.relation_columns(), p));
    fp::Matrix n = fp::kernel(a, p);
    fp::Matrix kgens(gs, n.cols());
    for (std::size_t r = 0; r < gs; ++r) {
      for (std::size_t c = 0; c < n.cols(); ++c) kgens(r, c) = n(r, c);
    }
    fp::Matrix rs = fp::Matrix::from_int(source.relation_columns(), p);
    fp::Matrix both = fp::hstack(rs, kgens);
    std::vector<std::size_t> chosen;
    for (std::size_t c : fp::independent_columns(both, p)) {
      if (c >= rs.cols()) chosen.push_back(c);
    }
    fp::Matrix inc(gs, chosen.size());
    for (std::size_t j = 0; j < chosen.size(); ++j) inc.set_column(j, both.column(chosen[j]));
    return {FPModule::free(ring, chosen.size()), inc.to_int()};
  }
  IntMatrix n = kernel_basis(hstack(m, target.relation_columns()));
  IntMatrix k = lattice_basis(n.row_block(0, gs));
  ColumnEchelon ke = column_echelon(k);
  IntMatrix ls = source.relation_columns();
  std::vector<IntVector> rel_rows;
  for (std::size_t c = 0; c < ls.cols(); ++c) {
    auto coords = solve_integer(ke, ls.column(c));
    if (!coords) throw InputError("kernel requested for a map that is not a homomorphism");
    if (!is_zero(*coords)) rel_rows.push_back(*coords);
  }
  return {FPModule(ring, k.cols(), IntMatrix::from_rows(rel_rows, k.cols())), k};
}

CokernelResult cokernel(const IntMatrix& m, const FPModule& target) {
  const std::size_t g = target.generators();
  const Ring& ring = target.ring();
  if (ring.is_prime_field()) {
    const fp::Elem p = ring.prime();
    fp::Matrix s = fp::hstack(fp::Matrix::from_int(target.relation_columns(), p), fp::Matrix::from_int(m, p));
    fp::Matrix with_id = fp::hstack(s, fp::Matrix::identity(g));
    std::vector<std::size_t> idx = fp::independent_columns(with_id, p);
    fp::Matrix q(g, idx.size());
    std::size_t d = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      q.set_column(j, with_id.column(idx[j]));
      if (idx[j] >= s.cols()) ++d;
    }
    fp::Solver solver(q, p);
    fp::Matrix proj(d, g);
    fp::Matrix lift(g, d);
    for (std::size_t r = 0; r < d; ++r) lift.set_column(r, q.column(idx.size() - d + r));
    for (std::size_t i = 0; i < g; ++i) {
      fp::Vec e(g, 0);
      e[i] = 1;
      fp::Vec x = *solver.solve(e);
      for (std::size_t r = 0; r < d; ++r) proj(r, i) = x[idx.size() - d + r];
    }
    return {FPModule::free(ring, d), proj.to_int(), lift.to_int()};
  }
  // Stack the relations, then pass to Smith coordinates and drop the
  // generators that become zero.
  IntMatrix rel = hstack(target.relation_columns(), m);
  SmithForm snf = smith_normal_form(rel);
  const IntVector diag = snf.diagonal();
  std::vector<std::size_t> keep;
  std::vector<Integer> order;
  for (std::size_t i = 0; i < g; ++i) {
    const Integer d = i < diag.size() ? abs(diag[i]) : Integer(0);
    if (d == 1) continue;
    keep.push_back(i);
    order.push_back(d);
  }
  const std::size_t t = keep.size();
  std::vector<IntVector> rows;
  for (std::size_t j = 0; j < t; ++j) {
    if (order[j] == 0 || order[j] == ring.modulus) continue;
    IntVector r(t);
    r[j] = order[j];
    rows.push_back(r);
  }
  IntMatrix proj(t, g), lift(g, t);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t c = 0; c < g; ++c) {
      proj(j, c) = snf.U(keep[j], c);
      lift(c, j) = snf.Uinv(c, keep[j]);
    }
  }
  if (!ring.is_integers()) {
    proj.reduce_mod(ring.modulus);
    lift.reduce_mod(ring.modulus);
  }
  return {FPModule(ring, t, IntMatrix::from_rows(rows, t)), proj, lift};
}

bool is_injective(const IntMatrix& m, const FPModule& source, const FPModule& target) {
  return kernel(m, source, target).module.is_zero();
}

std::optional<IntVector> coordinates(const IntMatrix& inclusion, const FPModule& ambient, const IntVector& v) {
  return preimage(inclusion, ambient, v);
}

ElementCoder::ElementCoder(const FPModule& m) : module_(m) {
  SmithForm s = smith_normal_form(m.relation_columns());
  if (s.rank != m.generators()) throw UnsupportedError("cannot enumerate an infinite module");
  u_ = std::move(s.U);
  uinv_ = std::move(s.Uinv);
  for (std::size_t i = 0; i < s.rank; ++i) {
    const Integer& d = s.D(i, i);
    if (d == 1) continue;
    if (d > Integer(std::numeric_limits<std::uint32_t>::max())) throw BoundError("module too large to enumerate");
    const auto di = static_cast<std::size_t>(d);
    if (size_ > std::numeric_limits<std::size_t>::max() / di / 2) throw BoundError("module too large to enumerate");
    active_.push_back(i);
    radix_.push_back(di);
    size_ *= di;
  }
}

IntVector ElementCoder::element(std::size_t i) const {
  IntVector c(module_.generators());
  for (std::size_t k = 0; k < active_.size(); ++k) {
    c[active_[k]] = i % radix_[k];
    i /= radix_[k];
  }
  return module_.reduce(uinv_ * c);
}

std::size_t ElementCoder::index(const IntVector& v) const {
  IntVector w = u_ * v;
  std::size_t idx = 0;
  for (std::size_t k = active_.size(); k-- > 0;) {
    const auto digit = static_cast<std::size_t>(mod_floor(w[active_[k]], Integer(radix_[k])));
    idx = idx * radix_[k] + digit;
  }
  return idx;
}

}  // namespace flasque
