#pragma once

// Shared helpers for the test suites: a small deterministic sampler,
// symplectic transforms built independently of the library internals, and a
// Richardson-extrapolated central difference for derivative checks.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "qcrb/gaussian.hpp"

namespace test_support {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double a, double b) {
    const double u = double(eng_() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }

 private:
  std::mt19937_64 eng_;
};

// Phase-space rotation by angle t, acting on mean and covariance.
inline qcrb::GaussianState rotate(const qcrb::GaussianState& s, double t) {
  const double c = std::cos(t), sn = std::sin(t);
  qcrb::GaussianState out;
  out.mean.x = c * s.mean.x - sn * s.mean.p;
  out.mean.p = sn * s.mean.x + c * s.mean.p;
  const double xx = s.cov.xx, xp = s.cov.xp, pp = s.cov.pp;
  out.cov.xx = c * c * xx - 2.0 * c * sn * xp + sn * sn * pp;
  out.cov.xp = c * sn * (xx - pp) + (c * c - sn * sn) * xp;
  out.cov.pp = sn * sn * xx + 2.0 * c * sn * xp + c * c * pp;
  return out;
}

inline qcrb::GaussianState displace(const qcrb::GaussianState& s, double dx,
                                    double dp) {
  qcrb::GaussianState out = s;
  out.mean.x += dx;
  out.mean.p += dp;
  return out;
}

// Central difference f'(x) with one Richardson step, O(h^4) for smooth f.
inline double central_derivative(const std::function<double(double)>& f,
                                 double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace test_support
