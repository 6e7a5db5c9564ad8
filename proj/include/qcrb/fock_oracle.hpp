#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "qcrb/families.hpp"
#include "qcrb/gaussian.hpp"
#include "qcrb/qfi.hpp"

namespace qcrb {

// Truncated number-basis oracle. States are built as dense density matrices
// on the first n_max + 1 number states by applying rotation, displacement
// and squeezing operators (dense matrix exponentials) to a thermal diagonal;
// information quantities then come from the symmetric logarithmic
// derivative. Nothing here touches the phase-space formulas, which is the
// point: the two routes agree only if both are right.

struct FockState {
  int n_max = 0;
  double tail_mass = 0.0;       // thermal weight beyond the truncation
  Eigen::MatrixXcd rho;         // Hermitian, renormalized to unit trace
};

inline constexpr double kTailCap = 1e-10;
inline constexpr double kEigenCutRel = 1e-12;  // of the largest eigenvalue

// a |n> = sqrt(n) |n-1> on dim = n_max + 1 levels, plus the quadratures
// x = a + a^dag and p = -i (a - a^dag) matching the hbar = 2 convention.
Eigen::MatrixXcd annihilation(int dim);
Eigen::MatrixXcd quadrature_x(int dim);
Eigen::MatrixXcd quadrature_p(int dim);

// rho = R(psi) D(alpha) S(r, chi) nu(n_th) S^dag D^dag R^dag truncated at
// n_max >= 8. The truncated displacement and squeezing generators stay
// anti-Hermitian, so the only truncation loss is the thermal tail; it must
// stay below tail_cap. The squeezing convention is fixed by the covariance
// parametrization: S(r, chi) squeezes the quadrature at angle chi by
// sigma = exp(-r) (generator (r/2)(e^{-2i chi} a^2 - e^{+2i chi} a^dag^2)).
FockState build_state(const StateParams& p, int n_max,
                      double tail_cap = kTailCap);

double expectation(const FockState& s, const Eigen::MatrixXcd& op);

// (tr sqrt(sqrt(rho_a) rho_b sqrt(rho_a)))^2 via eigendecompositions.
double uhlmann_fidelity(const FockState& a, const FockState& b);

// Symmetric logarithmic derivative: in the eigenbasis of rho,
// L_mn = 2 drho_mn / (lambda_m + lambda_n), with terms dropped when the
// eigenvalue sum falls below eigen_cut_rel times the largest eigenvalue.
Eigen::MatrixXcd sld(const FockState& rho, const Eigen::MatrixXcd& drho,
                     double eigen_cut_rel = kEigenCutRel);

// Fisher matrix entries 1/2 tr(rho (L_i L_j + L_j L_i)), cross-checked
// against the equivalent form tr(drho_i L_j); disagreement beyond 1e-8
// (relative above 1) raises ComputationError.
FisherMatrix fisher_matrix_fock(
    const FockState& rho,
    const std::vector<std::pair<std::string, Eigen::MatrixXcd>>& drhos,
    double eigen_cut_rel = kEigenCutRel);

// Scalar information for a parameter family: states at theta0 +- step give
// the central-difference drho, then I = tr(drho L).
double qfi_fock(const ParamFamily& f, int n_max, double step);

// Doubles n_max from n_start until the estimate moves by less than
// rel_tol * max(1, |I|) when the truncation grows by 20 levels, capped at
// n_cap.
struct FockQfiResult {
  double value = 0.0;
  int n_max = 0;
  bool converged = false;
  double delta = 0.0;  // last convergence probe
};

FockQfiResult qfi_fock_adaptive(const ParamFamily& f, double step,
                                int n_start = 80, int n_cap = 400,
                                double rel_tol = 1e-6);

}  // namespace qcrb
