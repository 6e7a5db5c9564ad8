#pragma once

#include <string_view>
#include <vector>

#include "qcrb/gaussian.hpp"
#include "qcrb/qfi.hpp"

namespace qcrb {

// One-parameter curves through the Gaussian state space along which
// estimation bounds are computed. The first six vary one slot of the
// displaced squeezed thermal decomposition; purity follows
// n_th = (1/P - 1)/2, and loss_eta follows a beam-splitter loss of strength
// eta applied to a fixed displaced squeezed vacuum.
enum class Family {
  kAlpha,
  kPsi,
  kSigma2,
  kR,
  kChi,
  kNth,
  kPurity,
  kLossEta,
};

// Names as accepted on the command line: alpha, psi, sigma2, r, chi, n_th,
// purity, loss_eta. Throws DomainError for anything else.
Family family_from_name(std::string_view name);
std::string_view family_name(Family f);
std::vector<Family> all_families();

struct ParamFamily {
  Family kind = Family::kAlpha;
  // Reference parameters; the slot the family varies is overridden by the
  // evaluation point (psi for kPsi, r for kSigma2/kR, n_th for kNth/kPurity).
  StateParams base;
  // Input state of the loss curve (kLossEta only): displaced squeezed vacuum
  // with amplitude alpha0 and standard deviation ratio sigma along x.
  double alpha0 = 0.0;
  double sigma = 1.0;
  // Evaluation point theta0.
  double point = 0.0;
};

// Decomposition parameters of the state at a curve point. For the loss
// family this is the effective displaced squeezed thermal form of the lossy
// state. Throws DomainError when theta leaves the family's domain.
StateParams params_at(const ParamFamily& f, double theta);

GaussianState state_at(const ParamFamily& f, double theta);
GaussianState state_at(const ParamFamily& f);  // at f.point

// Analytic d(mean)/dtheta and d(cov)/dtheta at f.point, with d_nth populated
// for the families that change the thermal occupation.
StateDerivative analytic_derivative(const ParamFamily& f);

// Closed-form quantum Fisher information at f.point.
double closed_form_qfi(const ParamFamily& f);

// Closed-form off-diagonal Fisher entry for two directions of the
// five-parameter decomposition evaluated at `at`. Only (chi, psi) and
// (alpha, psi) are nonzero. Accepts kAlpha, kPsi, kSigma2, kR, kChi, kNth.
double off_diagonal_closed_form(Family a, Family b, const StateParams& at);

}  // namespace qcrb
