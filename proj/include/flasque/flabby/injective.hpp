#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "flasque/flabby/field_sheaf.hpp"
#include "flasque/sheaf/mod_sheaf.hpp"
#include "flasque/sheaf/set_sheaf.hpp"

namespace flasque {

/// Ext¹(S_x, I) for the simple sheaf S_x at each point, over F_p.
struct InjectivityReport {
  bool injective = true;
  std::vector<std::size_t> ext_dims;
  /// First point with nonvanishing Ext¹.
  std::optional<Point> witness;
};

InjectivityReport injectivity_report(const FieldSheaf& i);
/// Throws UnsupportedError unless the ring is Z/p with p prime.
InjectivityReport injectivity_report(const ModSheaf& i);
bool is_injective_field(const FieldSheaf& i);
bool is_injective_field(const ModSheaf& i);

/// Some g : B -> I with g∘i = f, found by solving the linear conditions on
/// the components of g.
std::optional<ModMorphism> extension_test(const ModSheaf& target, const ModMorphism& i, const ModMorphism& f);
/// Set flavor by backtracking. Throws BoundError after `bound` search nodes.
std::optional<SetMorphism> extension_test(const SetSheaf& target, const SetMorphism& i, const SetMorphism& f,
                                          std::size_t bound = 1000000);

/// The internal hom [T, I]: stalk at x is Hom(T|U_x, I|U_x), restriction
/// restricts homomorphisms.
FieldSheaf internal_hom(const FieldSheaf& t, const FieldSheaf& i);

/// Test monos A ⊆ B with B ranging over representatives of the iso classes
/// of sheaves with stalk dimension <= d and A over all subsheaves of B.
/// Stage-wise restrictions are deduplicated.
struct MonoFamily {
  PosetPtr site;
  fp::Elem prime = 2;
  std::size_t bound = 0;
  std::vector<FieldSheaf> objects;
  struct Mono {
    std::size_t object;
    FieldSubsheaf sub;
  };
  std::vector<Mono> monos;
  /// stage_monos[x]: indices into monos whose restrictions to U_x are distinct.
  std::vector<std::vector<std::size_t>> stage_monos;
};

MonoFamily build_mono_family(const PosetPtr& site, fp::Elem prime, std::size_t d);

struct FamilyReport {
  bool passed = true;
  std::size_t bound = 0;
  std::size_t checks = 0;
  /// The failing mono A -> B and the stage x where [B,I] -> [A,I] is not onto.
  struct Witness {
    FieldSheaf b;
    FieldSubsheaf a;
    Point stage;
  };
  std::optional<Witness> witness;
  std::string describe() const;
};

/// Is [B, I] -> [A, I] an epimorphism for every mono of the family? At a
/// stage x this is surjectivity of Hom(B|U_x, I|U_x) -> Hom(A|U_x, I|U_x).
FamilyReport internal_injective_family(const FieldSheaf& i, const MonoFamily& family);
FamilyReport internal_injective_family(const ModSheaf& i, std::size_t d = 2);

}  // namespace flasque
