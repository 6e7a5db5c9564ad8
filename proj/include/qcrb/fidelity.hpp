#pragma once

#include "qcrb/gaussian.hpp"

namespace qcrb {

// Uhlmann fidelity of two single-mode Gaussian states,
//
//   F = 2 exp(-1/2 dX^T (cov1 + cov2)^{-1} dX)
//         / (sqrt(det(cov1 + cov2) + delta) - sqrt(delta)),
//
// with dX the mean difference and delta = (det cov1 - 1)(det cov2 - 1).
// Results land in (0, 1] with F = 1 exactly for identical states. Throws
// DomainError for unphysical inputs and ComputationError if the denominator
// degenerates.
double fidelity(const GaussianState& a, const GaussianState& b);

// Bures distance sqrt(2 - 2 sqrt(F)).
double bures_distance(const GaussianState& a, const GaussianState& b);

}  // namespace qcrb
