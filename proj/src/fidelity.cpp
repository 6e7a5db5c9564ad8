#include "qcrb/fidelity.hpp"

#include <cmath>
#include <sstream>

#include "qcrb/errors.hpp"

namespace qcrb {

namespace {

void require_physical(const GaussianState& s, const char* side) {
  if (!is_physical(s.cov)) {
    std::ostringstream msg;
    msg << "fidelity: " << side << " state is not physical (det cov = "
        << s.cov.det() << ")";
    throw DomainError(msg.str());
  }
}

}  // namespace

double fidelity(const GaussianState& a, const GaussianState& b) {
  require_physical(a, "first");
  require_physical(b, "second");

  CovMat sum;
  sum.xx = a.cov.xx + b.cov.xx;
  sum.xp = a.cov.xp + b.cov.xp;
  sum.pp = a.cov.pp + b.cov.pp;
  const double det_sum = sum.det();
  if (det_sum < 1e-200)
    throw ComputationError("fidelity: degenerate covariance sum");

  // (det cov - 1) >= 0 up to the physicality tolerance; clamp the tiny
  // negatives rounding produces at det = 1 so the square root stays real.
  const double delta =
      std::max(0.0, (a.cov.det() - 1.0) * (b.cov.det() - 1.0));

  // sqrt(det_sum + delta) - sqrt(delta), rationalized to avoid cancellation
  // when delta dominates.
  const double denom =
      det_sum / (std::sqrt(det_sum + delta) + std::sqrt(delta));
  if (denom < 1e-300)
    throw ComputationError("fidelity: denominator underflow");

  const double dx = a.mean.x - b.mean.x;
  const double dp = a.mean.p - b.mean.p;
  const double q =
      (sum.pp * dx * dx - 2.0 * sum.xp * dx * dp + sum.xx * dp * dp) / det_sum;

  double f = 2.0 * std::exp(-0.5 * q) / denom;
  if (f > 1.0) {
    if (f > 1.0 + 1e-9) {
      std::ostringstream msg;
      msg << "fidelity: value " << f << " exceeds 1 beyond tolerance";
      throw ComputationError(msg.str());
    }
    f = 1.0;
  }
  return f;
}

double bures_distance(const GaussianState& a, const GaussianState& b) {
  const double f = fidelity(a, b);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::sqrt(f)));
}

}  // namespace qcrb
