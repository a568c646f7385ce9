#pragma once

#include <stdexcept>
#include <string>

namespace twistmap {

/// Raised when an exhaustive search would exceed its configured size limit.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computed object contradicts a statement the library checks
/// (for example a non-unique minimum where uniqueness is expected).
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twistmap
