#pragma once

#include <stdexcept>
#include <string>

namespace gke {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched or invalid matrix/ensemble dimensions.
struct DimensionError : Error {
  using Error::Error;
};

// Scalar-function domain violations, including loss of positive definiteness.
struct DomainError : Error {
  using Error::Error;
};

// Parameter outside its admissible range.
struct RangeError : Error {
  using Error::Error;
};

// Rejected input data (asymmetric matrices, bad weights, malformed files).
struct ValidationError : Error {
  using Error::Error;
};

// Bad run configuration (unknown check id, missing instance field, bad flags).
struct ConfigError : Error {
  using Error::Error;
};

// Dense eigensolver failed to converge; carries a matrix fingerprint.
struct EigensolverError : Error {
  using Error::Error;
};

}  // namespace gke
