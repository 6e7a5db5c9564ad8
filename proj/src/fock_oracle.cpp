#include "qcrb/fock_oracle.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "qcrb/errors.hpp"

namespace qcrb {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXd;
using std::complex;

constexpr complex<double> kI{0.0, 1.0};

void require_dim(int dim) {
  if (dim < 9)
    throw DomainError("fock oracle: need a truncation of at least 8 levels");
}

void require_same_dim(const FockState& a, const FockState& b,
                      const char* where) {
  if (a.rho.rows() != b.rho.rows()) {
    std::ostringstream msg;
    msg << where << ": truncations differ (" << a.rho.rows() << " vs "
        << b.rho.rows() << ")";
    throw DomainError(msg.str());
  }
}

// Eigenvalues of a density-like matrix, clamped at zero; genuinely negative
// spectra are rejected.
VectorXd clamped_spectrum(const Eigen::SelfAdjointEigenSolver<MatrixXcd>& es,
                          const char* where) {
  VectorXd vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -1e-10) {
      std::ostringstream msg;
      msg << where << ": eigenvalue " << vals(i)
          << " below the positivity tolerance";
      throw ComputationError(msg.str());
    }
    if (vals(i) < 0.0) vals(i) = 0.0;
  }
  return vals;
}

}  // namespace

MatrixXcd annihilation(int dim) {
  require_dim(dim);
  MatrixXcd a = MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

MatrixXcd quadrature_x(int dim) {
  const MatrixXcd a = annihilation(dim);
  return a + a.adjoint();
}

MatrixXcd quadrature_p(int dim) {
  const MatrixXcd a = annihilation(dim);
  return -kI * (a - a.adjoint());
}

FockState build_state(const StateParams& p, int n_max, double tail_cap) {
  const int dim = n_max + 1;
  require_dim(dim);
  (void)from_params(p);  // validate the parameters

  // Thermal core and its exact tail beyond the truncation.
  VectorXd pn = VectorXd::Zero(dim);
  double tail = 0.0;
  if (p.n_th > 0.0) {
    const double ratio = p.n_th / (p.n_th + 1.0);
    double w = 1.0 / (p.n_th + 1.0);
    for (int n = 0; n < dim; ++n, w *= ratio) pn(n) = w;
    tail = std::pow(ratio, double(dim));
  } else {
    pn(0) = 1.0;
  }
  if (tail > tail_cap) {
    std::ostringstream msg;
    msg << "fock oracle: thermal tail " << tail << " above n_max = " << n_max
        << " exceeds the cap " << tail_cap << "; increase the truncation";
    throw ComputationError(msg.str());
  }

  MatrixXcd rho = pn.cast<complex<double>>().asDiagonal();

  if (p.r != 0.0) {
    const MatrixXcd a = annihilation(dim);
    const complex<double> phase = std::exp(-2.0 * kI * p.chi);
    const MatrixXcd gen =
        0.5 * p.r * (phase * a * a - std::conj(phase) * (a * a).adjoint());
    const MatrixXcd s = gen.exp();
    rho = s * rho * s.adjoint();
  }
  if (p.alpha != 0.0) {
    const MatrixXcd a = annihilation(dim);
    const MatrixXcd gen = p.alpha * (MatrixXcd(a.adjoint()) - a);
    const MatrixXcd d = gen.exp();
    rho = d * rho * d.adjoint();
  }
  if (p.psi != 0.0) {
    // R(psi) = exp(i psi a^dag a) is diagonal; apply it as phase factors.
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        rho(j, k) *= std::exp(kI * p.psi * double(j - k));
  }

  FockState out;
  out.n_max = n_max;
  const double trace = rho.trace().real();
  out.tail_mass = 1.0 - trace;
  rho /= trace;
  out.rho = 0.5 * (rho + rho.adjoint());
  return out;
}

double expectation(const FockState& s, const MatrixXcd& op) {
  return (s.rho * op).trace().real();
}

double uhlmann_fidelity(const FockState& a, const FockState& b) {
  require_same_dim(a, b, "uhlmann_fidelity");

  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a.rho);
  const VectorXd vals = clamped_spectrum(es, "uhlmann_fidelity");
  const MatrixXcd sqrt_a = es.eigenvectors() *
                           vals.cwiseSqrt().cast<complex<double>>().asDiagonal() *
                           es.eigenvectors().adjoint();

  MatrixXcd m = sqrt_a * b.rho * sqrt_a;
  m = 0.5 * (m + MatrixXcd(m.adjoint()));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es2(m);
  const VectorXd inner = clamped_spectrum(es2, "uhlmann_fidelity");

  double root_sum = 0.0;
  for (Eigen::Index i = 0; i < inner.size(); ++i)
    root_sum += std::sqrt(inner(i));
  double f = root_sum * root_sum;
  if (f > 1.0) {
    if (f > 1.0 + 1e-9)
      throw ComputationError("uhlmann_fidelity: value exceeds 1");
    f = 1.0;
  }
  return f;
}

MatrixXcd sld(const FockState& rho, const MatrixXcd& drho,
              double eigen_cut_rel) {
  if (rho.rho.rows() != drho.rows() || rho.rho.cols() != drho.cols())
    throw DomainError("sld: drho truncation does not match the state");

  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho.rho);
  const VectorXd vals = clamped_spectrum(es, "sld");
  const double cut = eigen_cut_rel * vals.maxCoeff();

  const MatrixXcd w = es.eigenvectors().adjoint() * drho * es.eigenvectors();
  MatrixXcd lw = MatrixXcd::Zero(w.rows(), w.cols());
  for (Eigen::Index m = 0; m < w.rows(); ++m) {
    for (Eigen::Index n = 0; n < w.cols(); ++n) {
      const double sum = vals(m) + vals(n);
      if (sum > cut) lw(m, n) = 2.0 * w(m, n) / sum;
    }
  }
  MatrixXcd l = es.eigenvectors() * lw * es.eigenvectors().adjoint();
  return 0.5 * (l + MatrixXcd(l.adjoint()));
}

FisherMatrix fisher_matrix_fock(
    const FockState& rho,
    const std::vector<std::pair<std::string, MatrixXcd>>& drhos,
    double eigen_cut_rel) {
  if (drhos.empty())
    throw DomainError("fisher_matrix_fock: no derivatives given");

  std::vector<MatrixXcd> ls;
  FisherMatrix out;
  for (const auto& [label, drho] : drhos) {
    out.labels.push_back(label);
    ls.push_back(sld(rho, drho, eigen_cut_rel));
  }

  const std::size_t n = drhos.size();
  out.entries.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double anticomm =
          0.5 * (rho.rho * (ls[i] * ls[j] + ls[j] * ls[i])).trace().real();
      const double from_drho =
          0.5 * ((drhos[i].second * ls[j]).trace().real() +
                 (drhos[j].second * ls[i]).trace().real());
      if (std::abs(anticomm - from_drho) >
          1e-8 * std::max(1.0, std::abs(anticomm))) {
        std::ostringstream msg;
        msg << "fisher_matrix_fock: the anticommutator and derivative forms "
               "disagree ("
            << anticomm << " vs " << from_drho << ") for (" << out.labels[i]
            << ", " << out.labels[j] << ")";
        throw ComputationError(msg.str());
      }
      out.at(i, j) = anticomm;
      out.at(j, i) = anticomm;
    }
  }
  return out;
}

double qfi_fock(const ParamFamily& f, int n_max, double step) {
  if (!(std::isfinite(step) && step > 0.0))
    throw DomainError("qfi_fock: step must be positive");
  const FockState center = build_state(params_at(f, f.point), n_max);
  const FockState plus = build_state(params_at(f, f.point + step), n_max);
  const FockState minus = build_state(params_at(f, f.point - step), n_max);
  const MatrixXcd drho = (plus.rho - minus.rho) / (2.0 * step);
  return fisher_matrix_fock(center, {{std::string(family_name(f.kind)), drho}})
      .at(0, 0);
}

FockQfiResult qfi_fock_adaptive(const ParamFamily& f, double step, int n_start,
                                int n_cap, double rel_tol) {
  FockQfiResult res;
  for (int n = n_start; n <= n_cap; n = std::min(2 * n, n_cap)) {
    const double coarse = qfi_fock(f, n, step);
    const double fine = qfi_fock(f, n + 20, step);
    res.value = fine;
    res.n_max = n + 20;
    res.delta = std::abs(fine - coarse);
    if (res.delta <= rel_tol * std::max(1.0, std::abs(fine))) {
      res.converged = true;
      return res;
    }
    if (n == n_cap) break;
  }
  return res;
}

}  // namespace qcrb
