#pragma once

#include <functional>

#include "qcrb/families.hpp"
#include "qcrb/gaussian.hpp"

namespace qcrb {

// Finite-difference estimates of the quantum Fisher information from the
// local behaviour of the fidelity: F(theta0, theta0 + e) = 1 - I e^2 / 4
// + O(e^3), so I is four times the negated fidelity curvature, estimated
// here on a symmetric stencil and refined by one Richardson step. Fully
// independent of the analytic information formulas; used to cross-check
// them.

using StateCurve = std::function<GaussianState(double)>;

struct CurvatureEstimate {
  double value;      // Richardson combination (4 at_half_h - at_h) / 3
  double at_h;       // -2 (F(+h) - 2 + F(-h)) / h^2
  double at_half_h;
  double step;
};

// Throws DomainError for h <= 0 and ComputationError when the stencil is
// unusable: fidelities indistinguishable from 1 at working precision (step
// too small) or a first finite difference too large for a smooth maximum at
// theta0 (kinked or discontinuous curve). A curve that is constant to
// machine precision yields 0.
CurvatureEstimate qfi_from_fidelity(const StateCurve& curve, double theta0,
                                    double h);

// One-sided route through the Bures distance, d_B ~ sqrt(I)/2 |e|:
// reports 4 (d_B / e)^2 at e = h and e = h/2. value() is the h/2 estimate;
// extrapolated() removes the leading O(h) error.
struct BuresEstimate {
  double at_h;
  double at_half_h;
  double step;

  double value() const { return at_half_h; }
  double extrapolated() const { return 2.0 * at_half_h - at_h; }
};

BuresEstimate qfi_from_bures(const StateCurve& curve, double theta0, double h);

// Step size for the estimators: 1e-4 * max(1, |theta0|). Large enough that
// the fidelity gap stays well above rounding even where the information is
// small, small enough that the Richardson step removes the remaining
// curvature-variation error.
double default_step(const ParamFamily& f);

// The family's curve as a callable for the estimators above.
StateCurve curve_of(const ParamFamily& f);

}  // namespace qcrb
