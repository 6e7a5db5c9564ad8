#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "qcrb/errors.hpp"
#include "qcrb/families.hpp"
#include "qcrb/gaussian.hpp"
#include "qcrb/qfi.hpp"
#include "support.hpp"

using namespace qcrb;
using Catch::Matchers::WithinAbs;

TEST_CASE("pure displacement of the vacuum", "[qfi]") {
  const GaussianState vac = from_params({});
  StateDerivative d;
  d.d_mean = {2.0, 0.0};  // d/d alpha of the mean (2 alpha, 0)
  CHECK_THAT(qfi_single(vac, d), WithinAbs(4.0, 1e-14));
}

TEST_CASE("displacement of a thermal state is damped by the noise", "[qfi]") {
  StateParams p;
  p.n_th = 1.0;
  StateDerivative d;
  d.d_mean = {2.0, 0.0};
  // Sigma = 3 I, so the displacement term is 4/3.
  CHECK_THAT(qfi_single(from_params(p), d), WithinAbs(4.0 / 3.0, 1e-14));
}

TEST_CASE("a vanishing derivative carries no information", "[qfi]") {
  StateParams p;
  p.alpha = 1.0;
  p.r = 0.5;
  p.n_th = 0.3;
  CHECK(qfi_single(from_params(p), StateDerivative{}) == 0.0);
}

TEST_CASE("pure squeezing information is constant in r", "[qfi]") {
  for (double r : {-1.0, -0.3, 0.0, 0.4, 1.2}) {
    StateParams p;
    p.r = r;
    ParamFamily f;
    f.kind = Family::kR;
    f.base = p;
    f.point = r;
    CHECK_THAT(qfi_single(state_at(f), analytic_derivative(f)),
               WithinAbs(2.0, 1e-12));
  }
}

TEST_CASE("thermal occupation information", "[qfi]") {
  ParamFamily f;
  f.kind = Family::kNth;
  f.base.n_th = 1.0;
  f.point = 1.0;
  // 1/(N + N^2) at N = 1
  CHECK_THAT(qfi_single(state_at(f), analytic_derivative(f)),
             WithinAbs(0.5, 1e-12));
}

TEST_CASE("scalar bound scales with repetitions", "[qfi]") {
  CHECK_THAT(crb_single(4.0, 1), WithinAbs(0.25, 1e-15));
  CHECK_THAT(crb_single(4.0, 100), WithinAbs(0.0025, 1e-15));
  CHECK_THROWS_AS(crb_single(4.0, 0), DomainError);
  CHECK_THROWS_AS(crb_single(-1.0, 1), DomainError);
  CHECK_THROWS_AS(crb_single(0.0, 1), ComputationError);
}

TEST_CASE("matrix diagonal equals the scalar route", "[qfi]") {
  StateParams p;
  p.alpha = 1.0;
  p.psi = 0.3;
  p.r = 0.5;
  p.chi = 0.7;
  p.n_th = 0.5;
  const GaussianState s = from_params(p);

  std::vector<LabeledDerivative> ds;
  for (Family k : {Family::kAlpha, Family::kPsi, Family::kR, Family::kChi,
                   Family::kNth}) {
    ParamFamily f;
    f.kind = k;
    f.base = p;
    switch (k) {
      case Family::kAlpha: f.point = p.alpha; break;
      case Family::kPsi: f.point = p.psi; break;
      case Family::kR: f.point = p.r; break;
      case Family::kChi: f.point = p.chi; break;
      default: f.point = p.n_th; break;
    }
    ds.push_back({std::string(family_name(k)), analytic_derivative(f)});
  }

  const FisherMatrix m = qfi_matrix(s, ds);
  REQUIRE(m.dim() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    ParamFamily f;
    f.kind = family_from_name(m.labels[i]);
    f.base = p;
    f.point = (i == 0   ? p.alpha
               : i == 1 ? p.psi
               : i == 2 ? p.r
               : i == 3 ? p.chi
                        : p.n_th);
    CHECK_THAT(m.at(i, i),
               WithinAbs(qfi_single(s, analytic_derivative(f)), 1e-12));
    for (std::size_t j = 0; j < 5; ++j)
      CHECK_THAT(m.at(i, j), WithinAbs(m.at(j, i), 1e-12));
  }
}

TEST_CASE("information matrices are positive semidefinite",
          "[qfi][property]") {
  test_support::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    StateParams p;
    p.alpha = rng.uniform(0.1, 2.0);
    p.psi = rng.uniform(-3.0, 3.0);
    p.r = rng.uniform(-1.0, 1.0);
    p.chi = rng.uniform(-3.0, 3.0);
    p.n_th = rng.uniform(0.05, 3.0);

    std::vector<LabeledDerivative> ds;
    for (Family k :
         {Family::kAlpha, Family::kPsi, Family::kR, Family::kChi,
          Family::kNth}) {
      ParamFamily f;
      f.kind = k;
      f.base = p;
      f.point = (k == Family::kAlpha ? p.alpha
                 : k == Family::kPsi ? p.psi
                 : k == Family::kR   ? p.r
                 : k == Family::kChi ? p.chi
                                     : p.n_th);
      ds.push_back({std::string(family_name(k)), analytic_derivative(f)});
    }
    const FisherMatrix m = qfi_matrix(from_params(p), ds);

    // Quadratic form against random vectors stays nonnegative.
    for (int v = 0; v < 5; ++v) {
      double w[5], quad = 0.0;
      for (double& wi : w) wi = rng.uniform(-1.0, 1.0);
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) quad += w[i] * m.at(i, j) * w[j];
      CHECK(quad >= -1e-9);
    }
  }
}

TEST_CASE("reparametrization follows the chain rule", "[qfi]") {
  // I_r = (d sigma2 / d r)^2 I_sigma2 with sigma2 = exp(-2r).
  StateParams p;
  p.alpha = 0.7;
  p.r = 0.35;
  p.n_th = 0.25;

  ParamFamily fr;
  fr.kind = Family::kR;
  fr.base = p;
  fr.point = p.r;

  ParamFamily fs;
  fs.kind = Family::kSigma2;
  fs.base = p;
  fs.point = std::exp(-2.0 * p.r);

  const double ir = qfi_single(state_at(fr), analytic_derivative(fr));
  const double is = qfi_single(state_at(fs), analytic_derivative(fs));
  const double jac = -2.0 * std::exp(-2.0 * p.r);
  CHECK_THAT(ir, WithinAbs(jac * jac * is, 1e-10));
}

TEST_CASE("pure-state boundary with a purity derivative is rejected",
          "[qfi][errors]") {
  const GaussianState vac = from_params({});
  StateDerivative d;
  d.d_cov.xx = 2.0;
  d.d_cov.pp = 2.0;
  d.d_nth = 1.0;  // drives purity off its boundary value
  CHECK_THROWS_AS(qfi_single(vac, d), ComputationError);

  // The same derivative on a mixed state is fine.
  StateParams p;
  p.n_th = 1.0;
  CHECK_NOTHROW(qfi_single(from_params(p), d));
}

TEST_CASE("singular matrix bound names a flat direction", "[qfi][errors]") {
  StateParams p;
  p.n_th = 0.5;  // no displacement, so alpha at 0 is informative but psi is not
  const GaussianState s = from_params(p);

  std::vector<LabeledDerivative> ds;
  StateDerivative da;
  da.d_mean = {2.0, 0.0};
  StateDerivative dzero;  // flat direction
  ds.push_back({"alpha", da});
  ds.push_back({"psi", dzero});

  const FisherMatrix m = qfi_matrix(s, ds);
  try {
    crb_matrix(m, 1);
    FAIL("expected a singularity report");
  } catch (const ComputationError& e) {
    const std::string what = e.what();
    CHECK(what.find("psi") != std::string::npos);
  }
}

TEST_CASE("matrix bound inverts the information", "[qfi]") {
  StateParams p;
  p.alpha = 1.0;
  p.psi = 0.3;
  p.r = 0.5;
  p.chi = 0.7;
  p.n_th = 0.5;

  std::vector<LabeledDerivative> ds;
  for (Family k : {Family::kAlpha, Family::kR, Family::kNth}) {
    ParamFamily f;
    f.kind = k;
    f.base = p;
    f.point = (k == Family::kAlpha ? p.alpha
               : k == Family::kR   ? p.r
                                   : p.n_th);
    ds.push_back({std::string(family_name(k)), analytic_derivative(f)});
  }
  const FisherMatrix m = qfi_matrix(from_params(p), ds);
  const FisherMatrix inv = crb_matrix(m, 4);

  // m * (4 * inv) = identity
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 3; ++k)
        acc += m.at(i, k) * 4.0 * inv.at(k, j);
      CHECK_THAT(acc, WithinAbs(i == j ? 1.0 : 0.0, 1e-10));
    }
}
