#pragma once

#include <stdexcept>
#include <string>

namespace mbound {

/// An enumeration or table construction would exceed a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is well formed but no curated data exists for it.
class DataUnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Curated data violates a structural invariant.
class DataIntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mbound
