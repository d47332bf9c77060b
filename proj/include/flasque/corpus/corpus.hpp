#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flasque/sheaf/mod_sheaf.hpp"
#include "flasque/sheaf/presheaf.hpp"
#include "flasque/sheaf/set_sheaf.hpp"
#include "flasque/site.hpp"

namespace flasque {

/// Built-in sites: point, sierpinski (p0 < p1), antichain2 (a, b),
/// pseudocircle (x, y < a, b), sphere2 (a, b < c, d < e, f).
std::vector<std::string> corpus_poset_names();
PosetPtr corpus_poset(const std::string& name);

/// One of the two flavors is set.
struct CorpusSheaf {
  std::string name;
  std::optional<SetSheaf> set;
  std::optional<ModSheaf> mod;
};

/// const-Z, const-Z2, const-Z4, const-set-2, terminal, omega, and
/// sky-<point>-Z2 for every point.
std::vector<std::string> corpus_sheaf_names(const FinPoset& p);
CorpusSheaf corpus_sheaf(const PosetPtr& p, const std::string& name);

/// BG for G = Z/2 with elements e, g.
CategoryPtr bg_z2();
/// "regular" or "terminal".
SetPresheaf bg_presheaf(const std::string& name);

struct NamedMap {
  std::string name;
  MonotoneMap map;
};
/// Identities and maps to the point for every corpus site, all monotone
/// maps pseudocircle -> sierpinski, sierpinski -> sierpinski and
/// antichain2 -> sierpinski, and the equator pseudocircle -> sphere2.
std::vector<NamedMap> corpus_maps();

}  // namespace flasque
