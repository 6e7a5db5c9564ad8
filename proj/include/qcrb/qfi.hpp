#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qcrb/gaussian.hpp"

namespace qcrb {

// Symmetric 2x2 matrix of covariance derivatives, zero-initialized.
struct SymMat2 {
  double xx = 0.0;
  double xp = 0.0;
  double pp = 0.0;
};

// First derivative of a Gaussian state along one parameter: the mean
// derivative, the covariance derivative, and optionally the thermal
// occupation derivative dn_th/dtheta for parameters that heat or cool the
// state. When d_nth is absent the purity derivative is recovered from
// P' = -P/2 tr(cov^{-1} dcov); when present, P' = -2 P^2 d_nth is used
// (the two agree for consistent derivatives, the latter is exact at the
// pure-state boundary).
struct StateDerivative {
  QuadVec d_mean;
  SymMat2 d_cov;
  std::optional<double> d_nth;
};

struct LabeledDerivative {
  std::string label;
  StateDerivative deriv;
};

// Labeled symmetric matrix in row-major storage; used both for Fisher
// information matrices and for their inverses (the Cramer-Rao bound).
struct FisherMatrix {
  std::vector<std::string> labels;
  std::vector<double> entries;

  std::size_t dim() const { return labels.size(); }
  double at(std::size_t i, std::size_t j) const {
    return entries[i * dim() + j];
  }
  double& at(std::size_t i, std::size_t j) { return entries[i * dim() + j]; }
};

// Quantum Fisher information of a Gaussian state along one parameter:
//
//   I = tr[(cov^{-1} dcov)^2] / (2 (1 + P^2))
//       + 2 P'^2 / (1 - P^4)
//       + dmean^T cov^{-1} dmean,
//
// with P the purity. The middle term is dropped at the pure-state boundary
// (1 - P^4 < 1e-10) when P' vanishes there; a nonzero P' at the boundary
// raises ComputationError, as does a singular covariance.
double qfi_single(const GaussianState& s, const StateDerivative& d);

// The multi-parameter version: entries
//
//   I_ij = tr[cov^{-1} dcov_i cov^{-1} dcov_j] / (2 (1 + P^2))
//          + 2 P'_i P'_j / (1 - P^4)
//          + dmean_i^T cov^{-1} dmean_j.
//
// Diagonal entries coincide with qfi_single on the same derivative.
FisherMatrix qfi_matrix(const GaussianState& s,
                        const std::vector<LabeledDerivative>& ds);

// Cramer-Rao bound (delta theta)^2 >= 1 / (q * I) for q independent
// repetitions. Throws DomainError for q < 1 and ComputationError when the
// parameter carries no information (I below 1e-300).
double crb_single(double info, long q);

// Matrix bound cov(theta_hat) >= (q * I)^{-1}. Requires the Fisher matrix to
// be safely invertible (smallest eigenvalue above 1e-12 of the largest);
// otherwise a ComputationError names the flat parameter combination.
FisherMatrix crb_matrix(const FisherMatrix& info, long q);

}  // namespace qcrb
