#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flasque/flabby/godement.hpp"
#include "flasque/homalg/complex.hpp"
#include "flasque/sheaf/mod_sheaf.hpp"

namespace flasque {

/// 0 -> F -> G^0 -> G^1 -> ... -> G^N built from Godement embeddings of
/// successive cokernels.
struct Resolution {
  ModSheaf sheaf;
  ModMorphism augmentation;
  std::vector<ModSheaf> terms;
  std::vector<ModMorphism> differentials;

  /// Stalkwise exactness of 0 -> F -> G^0 -> ... -> G^{N-1}; empty if exact.
  std::string exactness_violation() const;
};

/// Resolution with terms G^0..G^length. With `doubled`, every step embeds
/// into G(G(C)) instead of G(C).
Resolution godement_resolution(const ModSheaf& f, std::size_t length, bool doubled = false);

/// Γ(U, G^•) truncated to the terms of the resolution.
Complex sections_complex(const Resolution& r, Open u);

/// Longest chain length plus one.
std::size_t default_nmax(const FinPoset& p);

/// H^n(X, F) for n = 0..nmax from Γ of a Godement resolution.
CohomologyTable sheaf_cohomology(const ModSheaf& f, std::optional<std::size_t> nmax = std::nullopt,
                                 bool doubled = false);

/// R^n f_* F for n = 0..nmax: the stalk at q is H^n(Γ(f^{-1} U_q, G^•)),
/// comparison maps induced by restriction.
std::vector<ModSheaf> higher_direct_image(const MonotoneMap& f, const ModSheaf& s,
                                          std::optional<std::size_t> nmax = std::nullopt);

struct StalkFormulaReport {
  /// table[n][q]: invariant-factor string of (R^n f_* F)_q.
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Compares (R^n f_* F)_q with H^n(f^{-1}(U_q), F) computed on the open
/// subspace, for every q and n <= nmax.
StalkFormulaReport stalk_formula_check(const MonotoneMap& f, const ModSheaf& s,
                                       std::optional<std::size_t> nmax = std::nullopt);

/// A morphism F -> F' lifted to a chain map between the Godement
/// resolutions of F and F' (terms 0..length).
struct ResolutionMap {
  ModMorphism morphism;
  Resolution source;
  Resolution target;
  std::vector<ModMorphism> components;
};
ResolutionMap lift_to_resolutions(const ModMorphism& phi, std::size_t length);

/// H^n(X, phi) as a matrix between the generators of the homology modules
/// of the global-sections complexes (as returned by homology_data).
IntMatrix cohomology_map(const ResolutionMap& m, std::size_t n);

/// Exactness of 0 -> Γ(M') -> Γ(M) -> Γ(M'') -> H^1(M') -> H^1(M), with the
/// connecting map computed by the snake construction on the resolutions.
/// Empty when exact, otherwise the first failure.
std::string long_exact_violation(const ShortExact& s);

/// Simplicial cohomology of the order complex (chains x0 < ... < xk) with
/// coefficients in A.
CohomologyTable order_complex_cohomology(const FinPoset& p, const FPModule& a);

}  // namespace flasque
