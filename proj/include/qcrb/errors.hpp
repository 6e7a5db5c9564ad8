#pragma once

#include <stdexcept>
#include <string>

namespace qcrb {

// Invalid input: bad parameter values, unknown names, out-of-domain points.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Valid input on which a computation could not be completed reliably
// (singular matrices, truncation that refuses to converge, degenerate
// finite-difference stencils, ...).
class ComputationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcrb
