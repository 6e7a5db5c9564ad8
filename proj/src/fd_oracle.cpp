#include "qcrb/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qcrb/errors.hpp"
#include "qcrb/fidelity.hpp"

namespace qcrb {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Below this the curve is taken as constant; between this and the
// step-too-small threshold the stencil has real but untrustworthy curvature.
constexpr double kFlatTol = 64.0 * kEps;
constexpr double kStepTooSmall = 1000.0 * kEps;

void check_inputs(double theta0, double h) {
  if (!std::isfinite(theta0))
    throw DomainError("finite-difference estimate: theta0 must be finite");
  if (!(std::isfinite(h) && h > 0.0))
    throw DomainError("finite-difference estimate: step must be positive");
}

[[noreturn]] void fail_step(double one_minus_f, double h) {
  std::ostringstream msg;
  msg << "finite-difference estimate: F is within rounding of 1 at step " << h
      << " (|1 - F| = " << one_minus_f << "); increase the step";
  throw ComputationError(msg.str());
}

// Sub-rounding gaps at every stencil point are ambiguous: the curve may be
// constant, or the step may be far too small to resolve it. A probe four
// orders of magnitude out settles which.
bool flat_at_probe(const StateCurve& curve, const GaussianState& center,
                   double theta0, double h) {
  for (double offset : {1e4 * h, -1e4 * h}) {
    try {
      if (std::abs(1.0 - fidelity(center, curve(theta0 + offset))) > kFlatTol)
        return false;
    } catch (const DomainError&) {
      throw ComputationError(
          "finite-difference estimate: gaps are below rounding and the "
          "flatness probe left the parameter domain; increase the step");
    }
  }
  return true;
}

// Relative disagreement between the h and h/2 curvature estimates beyond
// this flags a curve whose gap is not second order at theta0 (a slope kink
// makes the estimates diverge like 1/h).
constexpr double kRichardsonTol = 0.25;

void check_consistency(double at_h, double at_half_h, double h) {
  const double scale =
      std::max({1.0, std::abs(at_h), std::abs(at_half_h)});
  if (std::abs(at_half_h - at_h) > kRichardsonTol * scale) {
    std::ostringstream msg;
    msg << "finite-difference estimate: curvature " << at_h << " at step " << h
        << " against " << at_half_h
        << " at half step; the curve is not smooth at theta0";
    throw ComputationError(msg.str());
  }
}

}  // namespace

CurvatureEstimate qfi_from_fidelity(const StateCurve& curve, double theta0,
                                    double h) {
  check_inputs(theta0, h);
  const GaussianState center = curve(theta0);

  const double offsets[4] = {h, -h, 0.5 * h, -0.5 * h};
  double gap[4];  // 1 - F at each offset
  bool flat = true;
  for (int i = 0; i < 4; ++i) {
    gap[i] = 1.0 - fidelity(center, curve(theta0 + offsets[i]));
    if (std::abs(gap[i]) > kFlatTol) flat = false;
  }
  if (flat) {
    if (flat_at_probe(curve, center, theta0, h)) return {0.0, 0.0, 0.0, h};
    fail_step(std::abs(gap[0]), h);
  }
  for (int i = 0; i < 4; ++i)
    if (std::abs(gap[i]) < kStepTooSmall)
      fail_step(std::abs(gap[i]), std::abs(offsets[i]));

  // F has a smooth maximum at theta0, so the first difference must be
  // second order in h; a larger value signals a kink.
  const double at_h = 2.0 * (gap[0] + gap[1]) / (h * h);
  const double at_half_h = 8.0 * (gap[2] + gap[3]) / (h * h);
  const double fd1 = (gap[1] - gap[0]) / (2.0 * h);
  const double fd1_limit = h * std::max(1.0, std::abs(at_h));
  if (std::abs(fd1) > fd1_limit) {
    std::ostringstream msg;
    msg << "finite-difference estimate: fidelity slope " << fd1 << " at step "
        << h << " exceeds " << fd1_limit
        << "; the curve is not smooth at theta0";
    throw ComputationError(msg.str());
  }
  check_consistency(at_h, at_half_h, h);

  return {(4.0 * at_half_h - at_h) / 3.0, at_h, at_half_h, h};
}

BuresEstimate qfi_from_bures(const StateCurve& curve, double theta0,
                             double h) {
  check_inputs(theta0, h);
  const GaussianState center = curve(theta0);

  double est[2];
  const double steps[2] = {h, 0.5 * h};
  bool flat = true;
  for (int i = 0; i < 2; ++i) {
    const GaussianState other = curve(theta0 + steps[i]);
    const double gap = 1.0 - fidelity(center, other);
    if (std::abs(gap) > kFlatTol) {
      flat = false;
      if (std::abs(gap) < kStepTooSmall) fail_step(std::abs(gap), steps[i]);
    }
    const double d = bures_distance(center, other);
    est[i] = 4.0 * (d / steps[i]) * (d / steps[i]);
  }
  if (flat) {
    if (flat_at_probe(curve, center, theta0, h)) return {0.0, 0.0, h};
    fail_step(0.0, h);
  }
  return {est[0], est[1], h};
}

double default_step(const ParamFamily& f) {
  // 1e-4 of the parameter scale for every family. Smaller steps push the
  // fidelity gap 1 - F ~ I h^2 / 4 toward rounding noise wherever the
  // information is small (hot thermal states), and the Richardson step
  // already suppresses the curvature-variation error of the sharper
  // families to O(h^4).
  return 1e-4 * std::max(1.0, std::abs(f.point));
}

StateCurve curve_of(const ParamFamily& f) {
  return [f](double theta) { return state_at(f, theta); };
}

}  // namespace qcrb
