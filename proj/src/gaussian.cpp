#include "qcrb/gaussian.hpp"

#include <cmath>
#include <sstream>

#include "qcrb/errors.hpp"

namespace qcrb {

namespace {

bool all_finite(const StateParams& p) {
  return std::isfinite(p.alpha) && std::isfinite(p.psi) && std::isfinite(p.r) &&
         std::isfinite(p.chi) && std::isfinite(p.n_th);
}

bool all_finite(const GaussianState& s) {
  return std::isfinite(s.mean.x) && std::isfinite(s.mean.p) &&
         std::isfinite(s.cov.xx) && std::isfinite(s.cov.xp) &&
         std::isfinite(s.cov.pp);
}

[[noreturn]] void fail_domain(const std::string& what, double value) {
  std::ostringstream msg;
  msg << what << " (got " << value << ")";
  throw DomainError(msg.str());
}

}  // namespace

GaussianState from_params(const StateParams& p) {
  if (!all_finite(p)) throw DomainError("state parameters must be finite");
  if (p.alpha < 0.0) fail_domain("alpha must be nonnegative", p.alpha);
  if (p.n_th < 0.0) fail_domain("n_th must be nonnegative", p.n_th);

  const double c = 2.0 * p.n_th + 1.0;
  const double s2 = std::exp(-2.0 * p.r);  // sigma^2
  const double phi = p.chi + p.psi;
  const double cph = std::cos(phi);
  const double sph = std::sin(phi);

  GaussianState out;
  out.mean.x = 2.0 * p.alpha * std::cos(p.psi);
  out.mean.p = 2.0 * p.alpha * std::sin(p.psi);
  out.cov.xx = c * (s2 * cph * cph + sph * sph / s2);
  out.cov.pp = c * (cph * cph / s2 + s2 * sph * sph);
  out.cov.xp = c * 0.5 * (s2 - 1.0 / s2) * std::sin(2.0 * phi);
  return out;
}

double purity(const GaussianState& s) {
  if (!is_physical(s.cov))
    throw DomainError(
        "purity: covariance must be positive definite with det >= 1");
  return 1.0 / std::sqrt(s.cov.det());
}

bool is_physical(const CovMat& c, double tol) {
  if (!std::isfinite(c.xx) || !std::isfinite(c.xp) || !std::isfinite(c.pp))
    return false;
  if (c.xx <= 0.0) return false;
  const double d = c.det();
  if (d <= 0.0) return false;
  return d >= 1.0 - tol;
}

double wigner(const GaussianState& s, const QuadVec& at) {
  if (!all_finite(s) || !std::isfinite(at.x) || !std::isfinite(at.p))
    throw DomainError("wigner: state and point must be finite");
  if (!is_physical(s.cov)) throw DomainError("wigner: state is not physical");

  const double d = s.cov.det();
  const double dx = at.x - s.mean.x;
  const double dp = at.p - s.mean.p;
  // quadratic form through the adjugate, (dx dp) cov^{-1} (dx dp)^T
  const double q = (s.cov.pp * dx * dx - 2.0 * s.cov.xp * dx * dp +
                    s.cov.xx * dp * dp) / d;
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::exp(-0.5 * q) / (two_pi * std::sqrt(d));
}

GaussianState apply_loss(const GaussianState& s, double eta) {
  if (!all_finite(s)) throw DomainError("apply_loss: state must be finite");
  if (!(eta >= 0.0 && eta <= 1.0))
    fail_domain("apply_loss: eta must lie in [0, 1]", eta);

  // Restricted input form: x-displaced squeezed vacuum, so the p-mean and
  // the covariance off-diagonal vanish and det cov = 1.
  const double scale = std::max(1.0, std::abs(s.mean.x));
  if (std::abs(s.mean.p) > kPhysicalTol * scale)
    throw DomainError("apply_loss: input must be displaced along x only");
  if (std::abs(s.cov.xp) > kPhysicalTol ||
      std::abs(s.cov.det() - 1.0) > kPhysicalTol)
    throw DomainError(
        "apply_loss: input must be a squeezed vacuum aligned with the axes");

  const double s2 = s.cov.xx;
  GaussianState out;
  out.mean.x = std::sqrt(1.0 - eta) * s.mean.x;
  out.mean.p = 0.0;
  out.cov.xx = s2 + eta * (1.0 - s2);
  out.cov.pp = 1.0 / s2 + eta * (1.0 - 1.0 / s2);
  out.cov.xp = 0.0;
  return out;
}

GaussianState apply_loss_general(const GaussianState& s, double eta) {
  if (!all_finite(s))
    throw DomainError("apply_loss_general: state must be finite");
  if (!(eta >= 0.0 && eta <= 1.0))
    fail_domain("apply_loss_general: eta must lie in [0, 1]", eta);

  const double t = 1.0 - eta;
  GaussianState out;
  out.mean.x = std::sqrt(t) * s.mean.x;
  out.mean.p = std::sqrt(t) * s.mean.p;
  out.cov.xx = t * s.cov.xx + eta;
  out.cov.xp = t * s.cov.xp;
  out.cov.pp = t * s.cov.pp + eta;
  return out;
}

}  // namespace qcrb
