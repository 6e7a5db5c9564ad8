#include "qcrb/qfi.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "qcrb/errors.hpp"

namespace qcrb {

namespace {

constexpr double kSingularCovTol = 1e-12;
constexpr double kPureBoundaryTol = 1e-10;   // on 1 - P^4
constexpr double kPurityDerivTol = 1e-8;     // |P'| allowed at the boundary
constexpr double kNegativeClampTol = 1e-12;

// Shared state-dependent pieces of the information formula.
struct Kernel {
  double inv_xx, inv_xp, inv_pp;  // cov^{-1}
  double p2;                      // P^2 = 1 / det cov
  double one_minus_p4;
};

Kernel make_kernel(const GaussianState& s) {
  const double det = s.cov.det();
  if (!(det > kSingularCovTol)) {
    std::ostringstream msg;
    msg << "qfi: covariance matrix is singular (det = " << det << ")";
    throw ComputationError(msg.str());
  }
  Kernel k;
  k.inv_xx = s.cov.pp / det;
  k.inv_xp = -s.cov.xp / det;
  k.inv_pp = s.cov.xx / det;
  k.p2 = 1.0 / det;
  // 1 - P^4 = (det^2 - 1) / det^2, formed from det to limit cancellation
  k.one_minus_p4 = (det * det - 1.0) / (det * det);
  return k;
}

// cov^{-1} dcov and the purity derivative for one direction.
struct Prepared {
  double a11, a12, a21, a22;
  double p_prime;
  QuadVec d_mean;
};

Prepared prepare(const Kernel& k, const StateDerivative& d) {
  Prepared pr;
  pr.a11 = k.inv_xx * d.d_cov.xx + k.inv_xp * d.d_cov.xp;
  pr.a12 = k.inv_xx * d.d_cov.xp + k.inv_xp * d.d_cov.pp;
  pr.a21 = k.inv_xp * d.d_cov.xx + k.inv_pp * d.d_cov.xp;
  pr.a22 = k.inv_xp * d.d_cov.xp + k.inv_pp * d.d_cov.pp;
  const double p = std::sqrt(k.p2);
  pr.p_prime = d.d_nth ? -2.0 * k.p2 * (*d.d_nth)
                       : -0.5 * p * (pr.a11 + pr.a22);
  pr.d_mean = d.d_mean;
  return pr;
}

double entry(const Kernel& k, const Prepared& a, const Prepared& b) {
  const double tr_ab =
      a.a11 * b.a11 + a.a12 * b.a21 + a.a21 * b.a12 + a.a22 * b.a22;
  const double noise = 0.5 * tr_ab / (1.0 + k.p2);

  double purity_term = 0.0;
  if (k.one_minus_p4 < kPureBoundaryTol) {
    if (std::abs(a.p_prime) > kPurityDerivTol ||
        std::abs(b.p_prime) > kPurityDerivTol) {
      std::ostringstream msg;
      msg << "qfi: purity derivative " << std::max(std::abs(a.p_prime),
                                                   std::abs(b.p_prime))
          << " at the pure-state boundary (1 - P^4 = " << k.one_minus_p4
          << "); the purity term diverges there";
      throw ComputationError(msg.str());
    }
  } else {
    purity_term = 2.0 * a.p_prime * b.p_prime / k.one_minus_p4;
  }

  const double disp = a.d_mean.x * (k.inv_xx * b.d_mean.x + k.inv_xp * b.d_mean.p) +
                      a.d_mean.p * (k.inv_xp * b.d_mean.x + k.inv_pp * b.d_mean.p);
  return noise + purity_term + disp;
}

double clamp_tiny_negative(double v) {
  return (v < 0.0 && v >= -kNegativeClampTol) ? 0.0 : v;
}

}  // namespace

double qfi_single(const GaussianState& s, const StateDerivative& d) {
  const Kernel k = make_kernel(s);
  const Prepared pr = prepare(k, d);
  return clamp_tiny_negative(entry(k, pr, pr));
}

FisherMatrix qfi_matrix(const GaussianState& s,
                        const std::vector<LabeledDerivative>& ds) {
  if (ds.empty()) throw DomainError("qfi_matrix: no derivatives given");
  const Kernel k = make_kernel(s);

  std::vector<Prepared> prep;
  prep.reserve(ds.size());
  FisherMatrix out;
  for (const auto& d : ds) {
    out.labels.push_back(d.label);
    prep.push_back(prepare(k, d.deriv));
  }

  const std::size_t n = ds.size();
  out.entries.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.at(i, i) = clamp_tiny_negative(entry(k, prep[i], prep[i]));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = entry(k, prep[i], prep[j]);
      out.at(i, j) = v;
      out.at(j, i) = v;
    }
  }
  return out;
}

double crb_single(double info, long q) {
  if (q < 1) throw DomainError("crb_single: q must be at least 1");
  if (!std::isfinite(info) || info < 0.0)
    throw DomainError("crb_single: information must be finite and nonnegative");
  if (info < 1e-300)
    throw ComputationError(
        "crb_single: parameter carries no information, bound is infinite");
  return 1.0 / (static_cast<double>(q) * info);
}

FisherMatrix crb_matrix(const FisherMatrix& info, long q) {
  if (q < 1) throw DomainError("crb_matrix: q must be at least 1");
  const std::size_t n = info.dim();
  if (n == 0 || info.entries.size() != n * n)
    throw DomainError("crb_matrix: malformed Fisher matrix");

  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = info.at(i, j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const auto& vals = es.eigenvalues();
  const double largest = vals(n - 1);
  if (!(largest > 0.0) || vals(0) <= 1e-12 * largest) {
    // Name the combination of parameters the data cannot resolve.
    std::ostringstream msg;
    msg << "crb_matrix: Fisher matrix is singular; flat direction ";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = es.eigenvectors()(i, 0);
      if (std::abs(c) < 0.1) continue;
      if (!first) msg << (c < 0.0 ? " - " : " + ");
      else if (c < 0.0) msg << "-";
      msg << std::abs(c) << "*" << info.labels[i];
      first = false;
    }
    throw ComputationError(msg.str());
  }

  Eigen::MatrixXd inv = es.eigenvectors() *
                        vals.cwiseInverse().asDiagonal() *
                        es.eigenvectors().transpose();
  inv /= static_cast<double>(q);

  FisherMatrix out;
  out.labels = info.labels;
  out.entries.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = inv(i, j);
  return out;
}

}  // namespace qcrb
