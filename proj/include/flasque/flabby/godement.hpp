#pragma once

#include "flasque/sheaf/mod_sheaf.hpp"
#include "flasque/sheaf/set_sheaf.hpp"

namespace flasque {

/// G = product over points x of skyscraper(x, P≤1(F_x)); G_y = ∏_{x >= y} P≤1(F_x)
/// with e_y(s) = ({comp(y, x)(s)})_x. P≤1(F_x) is F_x plus the empty part,
/// coded as |F_x|, so G is flabby even when some stalk is empty.
struct SetGodement {
  SetSheaf sheaf;
  SetMorphism embedding;
};
SetGodement godement_embed(const SetSheaf& f);

struct ModGodement {
  ModSheaf sheaf;
  ModMorphism embedding;
};
ModGodement godement_embed(const ModSheaf& f);

/// G(φ) : G(F) -> G(F'), componentwise φ_x on each factor.
ModMorphism godement_map(const ModMorphism& phi, const ModGodement& source, const ModGodement& target);

}  // namespace flasque
