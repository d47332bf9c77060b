#pragma once

#include <string>
#include <vector>

#include "flasque/internal/forcing.hpp"
#include "flasque/internal/formula.hpp"
#include "flasque/sheaf/mod_sheaf.hpp"
#include "flasque/sheaf/presheaf.hpp"
#include "flasque/sheaf/set_sheaf.hpp"

namespace flasque {

/// Closed formula forced at every stage.
bool holds_globally(const Structure& s, const FormulaPtr& f);

/// "X is a flabby set" forced at every stage. The ModSheaf version uses the
/// underlying set sheaf and throws UnsupportedError for infinite stalks.
bool internal_flabby(const SetSheaf& x);
bool internal_flabby(const ModSheaf& x);
bool internal_flabby(const SetPresheaf& x);
/// Stages where the flabbiness formula fails.
std::vector<Point> internal_flabby_failures(const SetSheaf& x);

/// Twenty intuitionistic tautologies in the propositions p, q, r and an
/// object X.
std::vector<FormulaPtr> ipc_schedule();

/// Forces every schedule entry globally for every interpretation of p, q, r
/// by subterminals of 1. Returns the first failure, or an empty string.
std::string check_ipc_schedule(const SetPresheaf& x);

}  // namespace flasque
