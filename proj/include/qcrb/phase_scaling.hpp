#pragma once

#include <functional>
#include <vector>

namespace qcrb {

// Scaling of the optimal phase sensitivity with the photon budget when a
// pure state (chi = 0) splits its total photon number N between coherent
// displacement alpha^2 and squeezing sinh^2 r.
//
// The figure of merit is the variance of a fringe readout of the rotating
// mean field: the coherent signal sees the squeezed quadrature noise while
// the squeezed vacuum adds its own photon-number background,
//
//   (delta psi)^2 = (alpha^2 e^{-2r} + sinh^2 r) / N^2.
//
// Minimized over the split this yields sinh^2 r ~ sqrt(N)/2 and the
// delta psi ~ N^{-3/4} law; forcing r = 0 recovers shot noise N^{-1/2}.
// (The full information of the state grows faster, carried by the rotation
// of the squeezing ellipse itself, but that is not what a fringe readout
// measures.)

struct PhasePoint {
  double n_total = 0.0;
  double split = 0.0;      // optimal squeezing fraction sinh^2 r / N
  double alpha_sq = 0.0;
  double sinh2_r = 0.0;
  double info = 0.0;       // effective information 1 / (delta psi)^2
  double delta_psi = 0.0;
};

PhasePoint optimize_phase_point(double n_total, bool coherent_only = false);

// Minimizes a unimodal function on [a, b] to within tol on the argument.
double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double tol);

// Least-squares fit of log10 y against log10 x.
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

LogLogFit fit_loglog(const std::vector<double>& x,
                     const std::vector<double>& y);

}  // namespace qcrb
