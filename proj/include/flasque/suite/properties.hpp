#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace flasque {

struct PropertyResult {
  std::string module;
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  /// First failing instance in enumeration order.
  std::string counterexample;
  std::string note;
  double seconds = 0;
};

struct SuiteOptions {
  /// Bounds for the enumerated set-sheaf corpus.
  std::size_t max_points = 4;
  std::size_t max_stalk = 3;
  /// Stalk dimension bound for enumerated field sheaves.
  std::size_t max_dim = 2;
  /// Directory of JSON corpus files for the round-trip property; skipped if empty.
  std::string data_dir;
};

struct Property {
  std::string module;
  std::string name;
  std::function<PropertyResult(const SuiteOptions&)> run;
};

/// Every invariant of the site, sheafcore, flabby, internal, homalg and cli
/// modules, in that order.
std::vector<Property> all_properties();

/// Runs the properties whose module or name contains `filter` (all if empty).
std::vector<PropertyResult> run_properties(const SuiteOptions& options, const std::string& filter = {});

struct AcceptanceResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  /// Time bound; 0 when none is pinned.
  double limit_seconds = 0;
};

struct Acceptance {
  int id;
  std::string title;
  double limit_seconds;
  /// Fills passed and detail; timing and the bound are applied by run_acceptance.
  std::function<AcceptanceResult()> run;
};

std::vector<Acceptance> acceptance_criteria();
AcceptanceResult run_acceptance(const Acceptance& a);

}  // namespace flasque
