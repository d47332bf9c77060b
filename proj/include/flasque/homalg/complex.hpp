#pragma once

#include <string>
#include <vector>

#include "flasque/homalg/module.hpp"

namespace flasque {

/// Bounded cochain complex C^0 -> C^1 -> ... -> C^N. differentials[n] is
/// the matrix of d^n : C^n -> C^{n+1}; there are N of them (d^N = 0).
struct Complex {
  std::vector<FPModule> terms;
  std::vector<IntMatrix> differentials;

  /// Checks shapes, that each d^n is a homomorphism and d^{n+1} d^n = 0.
  /// Returns a description of the first violation, or an empty string.
  std::string violation() const;
};

/// H^n for n = 0..N, each in invariant-factor form.
struct CohomologyTable {
  std::vector<FPModule> groups;

  std::vector<std::string> describe() const;
  /// Same invariant factors in every degree (missing degrees count as 0).
  bool same_as(const CohomologyTable& other) const;
  std::string to_string() const;
};

CohomologyTable cohomology(const Complex& c);

/// ker(out) / im(in) where in : A -> M, out : M -> B.
FPModule homology_at(const IntMatrix& in, const FPModule& m, const IntMatrix& out, const FPModule& b);

/// Homology at M together with the data needed to move classes around:
/// cycles embeds the cycle module into M, projection maps cycle
/// coordinates onto generators of H, lift goes back.
struct HomologyData {
  FPModule module;
  FPModule cycle_module;
  IntMatrix cycles;
  IntMatrix projection;
  IntMatrix lift;
  FPModule ambient;

  /// Class of a cycle (given in M coordinates); nullopt if it is not a cycle.
  std::optional<IntVector> class_of(const IntVector& cycle) const;
  /// A cycle in M representing the i-th generator of H.
  IntVector representative(std::size_t i) const;
};
HomologyData homology_data(const IntMatrix& in, const FPModule& m, const IntMatrix& out, const FPModule& b);

}  // namespace flasque
