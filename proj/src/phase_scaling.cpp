#include "qcrb/phase_scaling.hpp"

#include <cmath>

#include "qcrb/errors.hpp"

namespace qcrb {

namespace {

// Readout variance numerator alpha^2 e^{-2r} + sinh^2 r at squeezing photon
// number s out of n total; e^{-2r} = 1 / (sqrt(1 + s) + sqrt(s))^2.
double readout_numerator(double n, double s) {
  const double root = std::sqrt(1.0 + s) + std::sqrt(s);
  return (n - s) / (root * root) + s;
}

}  // namespace

double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw DomainError("golden_section_min: need a finite interval a < b");
  if (!(tol > 0.0)) throw DomainError("golden_section_min: tol must be > 0");

  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);   // 1/phi
  const double inv_phi2 = inv_phi * inv_phi;             // 1/phi^2

  double h = b - a;
  double c = a + inv_phi2 * h;
  double d = a + inv_phi * h;
  double fc = f(c);
  double fd = f(d);
  while (h > tol) {
    h *= inv_phi;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = a + inv_phi2 * h;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * h;
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

PhasePoint optimize_phase_point(double n_total, bool coherent_only) {
  if (!(std::isfinite(n_total) && n_total > 0.0))
    throw DomainError("optimize_phase_point: n_total must be > 0");

  PhasePoint out;
  out.n_total = n_total;
  if (coherent_only) {
    out.split = 0.0;
  } else {
    auto objective = [n_total](double frac) {
      return readout_numerator(n_total, frac * n_total);
    };
    out.split = golden_section_min(objective, 0.0, 1.0, 1e-10);
  }
  out.sinh2_r = out.split * n_total;
  out.alpha_sq = n_total - out.sinh2_r;
  const double var = readout_numerator(n_total, out.sinh2_r) /
                     (n_total * n_total);
  out.delta_psi = std::sqrt(var);
  out.info = 1.0 / var;
  return out;
}

LogLogFit fit_loglog(const std::vector<double>& x,
                     const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("fit_loglog: need at least two matching points");

  const int n = static_cast<int>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0))
      throw DomainError("fit_loglog: points must be positive");
    const double lx = std::log10(x[i]);
    const double ly = std::log10(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-12)
    throw ComputationError("fit_loglog: abscissae are degenerate");

  LogLogFit fit;
  fit.points = n;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double ss_tot = syy - sy * sy / n;
  const double ss_res = ss_tot - fit.slope * (sxy - sx * sy / n);
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace qcrb
