#pragma once

#include <string>
#include <vector>

#include "flasque/flabby/flabby.hpp"
#include "flasque/flabby/subterminal.hpp"
#include "flasque/sheaf/mod_sheaf.hpp"
#include "flasque/sheaf/set_sheaf.hpp"

namespace flasque {

/// The quotient P≤1(M)/~ computed stage by stage: the stalk at x is the set
/// of subterminal parts of M over U_x, with all parts contained in {0}
/// identified. The embedding sends s to [{s}].
struct Envelope {
  SetSheaf sheaf;
  SetMorphism embedding;
  /// class_of[x][k]: class of the k-th part of P≤1(M)_x.
  std::vector<std::vector<std::size_t>> class_of;
  SubterminalObject parts;
  /// Empty if [K] + [L] := [K + L] is well defined at every stage, else a
  /// description of representatives showing it is not.
  std::string addition_violation;
  bool embedding_mono = false;
  FlabbyVerdict traditional;
  FlabbyVerdict local;
};

/// Throws UnsupportedError for infinite stalks.
Envelope candidate_envelope(const ModSheaf& m);

}  // namespace flasque
