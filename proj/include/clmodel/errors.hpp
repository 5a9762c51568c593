#pragma once

#include <stdexcept>
#include <string>

namespace clmodel {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input document (JSON/CSV syntax, wrong field type, unknown key).
struct ParseError : ModelError {
  using ModelError::ModelError;
};

// Structurally valid input violating a model invariant.
struct ValidationError : ModelError {
  using ModelError::ModelError;
};

// Request for a hierarchy level the machine does not have.
struct TopologyError : ModelError {
  using ModelError::ModelError;
};

// Simulator working set cannot be fitted to the requested level.
struct SizingError : ModelError {
  using ModelError::ModelError;
};

// Operation input outside its mathematical domain.
struct DomainError : ModelError {
  using ModelError::ModelError;
};

// Missing optional machine data required by the requested operation.
struct ConfigError : ModelError {
  using ModelError::ModelError;
};

}  // namespace clmodel
