#pragma once

#include <cmath>

namespace qcrb {

// Single-mode Gaussian states in phase-space form.
//
// Units: hbar = 2 throughout. The vacuum state then has covariance matrix
// equal to the 2x2 identity, Var(x) = Var(p) = 1, and a coherent state of
// complex amplitude a has mean vector (2 Re a, 2 Im a). Purity is
// 1 / sqrt(det cov), and det cov >= 1 for every physical state.

struct QuadVec {
  double x = 0.0;
  double p = 0.0;
};

// Symmetric 2x2 covariance matrix [[xx, xp], [xp, pp]].
struct CovMat {
  double xx = 1.0;
  double xp = 0.0;
  double pp = 1.0;

  double det() const { return xx * pp - xp * xp; }
  double trace() const { return xx + pp; }
};

struct GaussianState {
  QuadVec mean;
  CovMat cov;
};

// Parameters of the displaced squeezed thermal decomposition
//
//   rho = R(psi) D(alpha) S(r, chi) nu(n_th) S^dag D^dag R^dag,
//
// where alpha >= 0 is the coherent amplitude (displacement 2*alpha in these
// units), psi a phase-space rotation, sigma = exp(-r) the squeezed standard
// deviation ratio, chi the squeezing angle and n_th >= 0 the mean occupation
// of the thermal core nu.
struct StateParams {
  double alpha = 0.0;
  double psi = 0.0;
  double r = 0.0;
  double chi = 0.0;
  double n_th = 0.0;

  double sigma() const { return std::exp(-r); }
};

// Tolerance for physicality checks on covariance matrices.
inline constexpr double kPhysicalTol = 1e-9;

// Builds the state with mean (2 alpha cos psi, 2 alpha sin psi) and
// covariance (2 n_th + 1) R_phi diag(sigma^2, 1/sigma^2) R_phi^T at
// phi = chi + psi. Throws DomainError for alpha < 0, n_th < 0 or
// non-finite input.
GaussianState from_params(const StateParams& p);

// 1 / sqrt(det cov). Throws DomainError if the covariance is not positive
// definite.
double purity(const GaussianState& s);

// det c >= 1 - tol together with positive definiteness (the uncertainty
// relation in hbar = 2 units).
bool is_physical(const CovMat& c, double tol = kPhysicalTol);

// Wigner function value at a phase-space point.
double wigner(const GaussianState& s, const QuadVec& at);

// Pure-loss channel of transmissivity 1 - eta applied to a displaced
// squeezed vacuum prepared along x (mean (2 alpha0, 0), covariance
// diag(sigma^2, 1/sigma^2)). eta in [0, 1) is the loss fraction:
//
//   mean -> sqrt(1 - eta) * mean,   cov -> (1 - eta) cov + eta I.
//
// Throws DomainError if the input state is not of that restricted form;
// apply_loss_general handles arbitrary states.
GaussianState apply_loss(const GaussianState& s, double eta);

// The same channel without the input-form restriction.
GaussianState apply_loss_general(const GaussianState& s, double eta);

}  // namespace qcrb
