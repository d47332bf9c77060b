#pragma once

#include <stdexcept>
#include <string>

namespace flasque {

/// Malformed or semantically invalid input (bad JSON, non-monotone map,
/// functoriality violation, ...). The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested computation is outside what the workbench decides, e.g.
/// enumerating elements of an infinite stalk or asking for injectivity over
/// a ring that is not a prime field.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration or size bound exceeded; overridable by the caller.
class BoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace flasque
