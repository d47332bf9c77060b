#include "flasque/flabby/godement.hpp"

#include "flasque/errors.hpp"

namespace flasque {

SetGodement godement_embed(const SetSheaf& f) {
  const FinPoset& p = f.site();
  const std::size_t n = p.size();
  // Tuples over U_y in increasing point order, first point most significant.
  // The factor at x is P≤1(F_x): an element of F_x, or the empty part (code |F_x|).
  auto radix = [&](Point x) { return f.stalk_size(x) + 1; };
  std::vector<std::vector<Point>> factors(n);
  std::vector<std::size_t> sizes(n, 1);
  for (Point y = 0; y < n; ++y) {
    factors[y] = p.minimal_open(y).points();
    for (Point x : factors[y]) sizes[y] *= radix(x);
  }
  auto decode = [&](Point y, std::size_t code) {
    Section t(n, kUndefined);
    for (auto it = factors[y].rbegin(); it != factors[y].rend(); ++it) {
      t[*it] = code % radix(*it);
      code /= radix(*it);
    }
    return t;
  };
  auto encode = [&](Point y, const Section& t) {
    std::size_t code = 0;
    for (Point x : factors[y]) code = code * radix(x) + t[x];
    return code;
  };
  std::map<std::pair<Point, Point>, SetMap> maps;
  for (const auto& [a, b] : p.hasse_edges()) {
    SetMap m(sizes[a]);
    for (std::size_t c = 0; c < sizes[a]; ++c) m[c] = encode(b, decode(a, c));
    maps[{a, b}] = m;
  }
  SetSheaf g(f.site_ptr(), sizes, maps);
  std::vector<SetMap> e(n);
  for (Point y = 0; y < n; ++y) {
    for (std::size_t s = 0; s < f.stalk_size(y); ++s) {
      Section t(n, kUndefined);
      for (Point x : factors[y]) t[x] = f.apply(y, x, s);
      e[y].push_back(encode(y, t));
    }
  }
  SetMorphism emb{f, g, e};
  emb.validate();
  return {g, emb};
}

ModGodement godement_embed(const ModSheaf& f) {
  const FinPoset& p = f.site();
  const std::size_t n = p.size();
  std::vector<std::vector<Point>> factors(n);
  std::vector<FPModule> stalks;
  for (Point y = 0; y < n; ++y) {
    factors[y] = p.minimal_open(y).points();
    std::vector<FPModule> parts;
    for (Point x : factors[y]) parts.push_back(f.stalk(x));
    stalks.push_back(FPModule::direct_sum(parts));
  }
  auto block_offset = [&](Point y, Point x) {
    std::size_t off = 0;
    for (Point z : factors[y]) {
      if (z == x) return off;
      off += f.stalk(z).generators();
    }
    throw InputError("factor not present");
  };
  std::map<std::pair<Point, Point>, IntMatrix> maps;
  for (const auto& [a, b] : p.hasse_edges()) {
    IntMatrix m(stalks[b].generators(), stalks[a].generators());
    for (Point x : factors[b]) {
      m.paste(block_offset(b, x), block_offset(a, x), IntMatrix::identity(f.stalk(x).generators()));
    }
    maps[{a, b}] = m;
  }
  ModSheaf g(f.site_ptr(), f.ring(), stalks, maps);
  std::vector<IntMatrix> e;
  for (Point y = 0; y < n; ++y) {
    IntMatrix m(stalks[y].generators(), f.stalk(y).generators());
    for (Point x : factors[y]) m.paste(block_offset(y, x), 0, f.comp(y, x));
    e.push_back(m);
  }
  return {g, ModMorphism{f, g, e}};
}

ModMorphism godement_map(const ModMorphism& phi, const ModGodement& source, const ModGodement& target) {
  const FinPoset& p = phi.source.site();
  std::vector<IntMatrix> comps;
  for (Point y = 0; y < p.size(); ++y) {
    std::vector<IntMatrix> blocks;
    for (Point x : p.minimal_open(y).points()) blocks.push_back(phi.components[x]);
    comps.push_back(block_diagonal(blocks));
  }
  return {source.sheaf, target.sheaf, comps};
}

}  // namespace flasque
