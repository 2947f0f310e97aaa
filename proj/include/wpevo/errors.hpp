#pragma once

#include <stdexcept>

namespace wpevo {

// Shape or length disagreement between genomes, layouts and topologies.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed serialized genome or config text.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite values met while rolling out a policy.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (bad action, bad probability, ...).
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wpevo
