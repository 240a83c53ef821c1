#pragma once

#include <stdexcept>

namespace rig {

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An exhaustive enumeration or bounded search exceeded its configured cap.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (n, m) falls in the excluded band between the two a_n regimes.
struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The threshold equation has no root p in (0, 1).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rig
