#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flasque/homalg/module.hpp"
#include "flasque/sheaf/set_sheaf.hpp"
#include "flasque/site.hpp"

namespace flasque {

/// A sheaf of finitely presented modules over a constant ring on a finite
/// poset. comp(x, y) is the matrix of F_x -> F_y for x <= y.
class ModSheaf {
 public:
  ModSheaf() = default;
  /// Maps are given on Hasse edges; each must be well defined and all
  /// composites must agree modulo relations. Missing maps into a zero stalk
  /// default to zero.
  ModSheaf(PosetPtr site, Ring ring, std::vector<FPModule> stalks,
           const std::map<std::pair<Point, Point>, IntMatrix>& edge_maps);

  const FinPoset& site() const { return *site_; }
  const PosetPtr& site_ptr() const { return site_; }
  const Ring& ring() const { return ring_; }
  const FPModule& stalk(Point x) const { return stalks_.at(x); }
  const std::vector<FPModule>& stalks() const { return stalks_; }
  const IntMatrix& comp(Point x, Point y) const;
  /// Maps on Hasse edges, as stored.
  std::map<std::pair<Point, Point>, IntMatrix> edge_maps() const;

  bool has_finite_stalks() const;

 private:
  PosetPtr site_;
  Ring ring_;
  std::vector<FPModule> stalks_;
  std::vector<IntMatrix> comps_;
};

ModSheaf constant_sheaf(const PosetPtr& p, const FPModule& m);
ModSheaf zero_sheaf(const PosetPtr& p, const Ring& ring);
/// Stalk m at points y <= x, zero elsewhere.
ModSheaf skyscraper(const PosetPtr& p, Point x, const FPModule& m);
ModSheaf direct_sum(const ModSheaf& f, const ModSheaf& g);

/// F(U) presented as the kernel of the compatibility map on the product of
/// stalks over U. `realization` maps section coordinates to the
/// concatenated stalk coordinates of `points` (block i starts at offsets[i]).
struct SectionModule {
  Open domain;
  FPModule module;
  IntMatrix realization;
  FPModule ambient;
  std::vector<Point> points;
  std::vector<std::size_t> offsets;

  /// Value at point x of the section with the given coordinates.
  IntVector value(const IntVector& coords, Point x) const;
  /// Coordinates of the section with the given ambient vector, if it is one.
  std::optional<IntVector> coordinates_of(const IntVector& ambient_vector) const;
};

SectionModule sections(const ModSheaf& f, Open u);
SectionModule global_sections(const ModSheaf& f);
/// Matrix of F(U) -> F(V) for V ⊆ U.
IntMatrix restriction(const SectionModule& from, const SectionModule& to);

struct ModMorphism {
  ModSheaf source;
  ModSheaf target;
  std::vector<IntMatrix> components;

  /// Throws InputError on shape, well-definedness or naturality failures.
  void validate() const;
};

ModMorphism identity_morphism(const ModSheaf& f);
ModMorphism scalar_morphism(const ModSheaf& f, const Integer& k);
ModMorphism compose(const ModMorphism& g, const ModMorphism& f);
bool is_mono(const ModMorphism& m);
bool is_epi(const ModMorphism& m);
/// Induced map F(U) -> G(U).
IntMatrix sections_map(const ModMorphism& m, const SectionModule& from, const SectionModule& to);

/// 0 -> M' -i-> M -p-> M'' -> 0.
struct ShortExact {
  ModMorphism i;
  ModMorphism p;

  /// Empty when exact at every point, otherwise the first failure.
  std::string violation() const;
};

ModSheaf pushforward(const MonotoneMap& f, const ModSheaf& s);
ModSheaf pullback(const MonotoneMap& f, const ModSheaf& g);
ModMorphism pullback(const MonotoneMap& f, const ModMorphism& m);
/// F restricted to an open U, as a sheaf on the subposet U.
ModSheaf restrict_to_open(const ModSheaf& f, Open u);

/// The sheaf of underlying sets (finite stalks only). Elements at x are
/// numbered by ElementCoder(F_x).
SetSheaf underlying_set_sheaf(const ModSheaf& f);

}  // namespace flasque

namespace flasque {

/// Stalkwise cokernel of a morphism, with the projection from its target.
struct SheafCokernel {
  ModSheaf sheaf;
  ModMorphism projection;
};
SheafCokernel cokernel_sheaf(const ModMorphism& m);

}  // namespace flasque
