#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "qcrb/errors.hpp"
#include "qcrb/families.hpp"
#include "qcrb/gaussian.hpp"
#include "qcrb/qfi.hpp"
#include "support.hpp"

using namespace qcrb;
using Catch::Matchers::WithinAbs;

namespace {

ParamFamily make_family(Family kind, const StateParams& base, double point) {
  ParamFamily f;
  f.kind = kind;
  f.base = base;
  f.point = point;
  return f;
}

double closed_at(Family kind, const StateParams& base, double point) {
  return closed_form_qfi(make_family(kind, base, point));
}

}  // namespace

TEST_CASE("names round-trip", "[families]") {
  for (Family k : all_families())
    CHECK(family_from_name(std::string(family_name(k))) == k);
  CHECK(family_from_name("nth") == Family::kNth);  // matches the --nth flag
  CHECK_THROWS_AS(family_from_name("bogus"), DomainError);
}

TEST_CASE("closed forms at hand-computed points", "[families]") {
  StateParams vac;

  SECTION("displacement of the vacuum") {
    CHECK_THAT(closed_at(Family::kAlpha, vac, 1.0), WithinAbs(4.0, 1e-15));
  }

  SECTION("squeezing angle") {
    StateParams p;
    p.r = std::log(2.0);  // sigma = 1/2, sigma^2 = 1/4
    CHECK_THAT(closed_at(Family::kChi, p, 0.0), WithinAbs(7.03125, 1e-12));
  }

  SECTION("rotation of a displaced mixed state") {
    StateParams p;
    p.alpha = 2.0;
    p.n_th = 1.0;  // purity 1/3, sigma = 1
    CHECK_THAT(closed_at(Family::kPsi, p, 0.0),
               WithinAbs(16.0 / 3.0, 1e-12));
  }

  SECTION("squeezing magnitude depends only on purity") {
    CHECK_THAT(closed_at(Family::kR, vac, 0.7), WithinAbs(2.0, 1e-15));
    StateParams p;
    p.n_th = 1.0;
    CHECK_THAT(closed_at(Family::kR, p, -0.3), WithinAbs(3.6, 1e-12));
  }

  SECTION("variance parameter") {
    StateParams p;
    p.r = std::log(2.0);
    CHECK_THAT(closed_at(Family::kSigma2, p, 0.25), WithinAbs(8.0, 1e-12));
  }

  SECTION("thermal occupation") {
    StateParams p;
    p.n_th = 1.0;
    CHECK_THAT(closed_at(Family::kNth, p, 1.0), WithinAbs(0.5, 1e-15));
    p.n_th = 2.0;
    CHECK_THAT(closed_at(Family::kNth, p, 2.0),
               WithinAbs(1.0 / 6.0, 1e-15));
  }

  SECTION("purity") {
    StateParams p;
    p.n_th = 0.5;  // P = 1/2
    CHECK_THAT(closed_at(Family::kPurity, p, 0.5),
               WithinAbs(16.0 / 3.0, 1e-12));
  }

  SECTION("loss fraction") {
    ParamFamily f;
    f.kind = Family::kLossEta;
    f.alpha0 = 2.0;
    f.sigma = 1.0;
    f.point = 0.5;
    CHECK_THAT(closed_form_qfi(f), WithinAbs(8.0, 1e-12));

    f.alpha0 = 0.0;
    f.sigma = 0.5;
    f.point = 0.5;
    CHECK_THAT(closed_form_qfi(f), WithinAbs(0.8780487804878049, 1e-12));
  }
}

TEST_CASE("analytic derivatives match finite differences",
          "[families][property]") {
  test_support::Rng rng(101);

  auto check_family = [&](Family kind) {
    for (int trial = 0; trial < 40; ++trial) {
      StateParams base;
      base.alpha = rng.uniform(0.3, 2.0);
      base.psi = rng.uniform(-2.0, 2.0);
      base.r = rng.uniform(-1.0, 1.0);
      base.chi = rng.uniform(-2.0, 2.0);
      base.n_th = rng.uniform(0.1, 2.0);

      ParamFamily f;
      f.kind = kind;
      f.base = base;
      switch (kind) {
        case Family::kAlpha: f.point = base.alpha; break;
        case Family::kPsi: f.point = base.psi; break;
        case Family::kSigma2: f.point = std::exp(-2.0 * base.r); break;
        case Family::kR: f.point = base.r; break;
        case Family::kChi: f.point = base.chi; break;
        case Family::kNth: f.point = base.n_th; break;
        case Family::kPurity:
          f.point = 1.0 / (2.0 * base.n_th + 1.0);
          break;
        case Family::kLossEta:
          f.alpha0 = rng.uniform(0.2, 2.0);
          f.sigma = rng.uniform(0.5, 2.0);
          f.point = rng.uniform(0.1, 0.9);
          break;
      }

      const StateDerivative d = analytic_derivative(f);
      const double h = 1e-4 * std::max(1.0, std::abs(f.point));
      auto component = [&](auto&& pick) {
        return test_support::central_derivative(
            [&](double t) {
              ParamFamily g = f;
              g.point = t;
              return pick(state_at(g));
            },
            f.point, h);
      };

      CHECK_THAT(d.d_mean.x,
                 WithinAbs(component([](const GaussianState& s) {
                             return s.mean.x;
                           }),
                           1e-7));
      CHECK_THAT(d.d_mean.p,
                 WithinAbs(component([](const GaussianState& s) {
                             return s.mean.p;
                           }),
                           1e-7));
      CHECK_THAT(d.d_cov.xx,
                 WithinAbs(component([](const GaussianState& s) {
                             return s.cov.xx;
                           }),
                           1e-7));
      CHECK_THAT(d.d_cov.xp,
                 WithinAbs(component([](const GaussianState& s) {
                             return s.cov.xp;
                           }),
                           1e-7));
      CHECK_THAT(d.d_cov.pp,
                 WithinAbs(component([](const GaussianState& s) {
                             return s.cov.pp;
                           }),
                           1e-7));
    }
  };

  for (Family k : all_families()) check_family(k);
}

TEST_CASE("closed forms agree with the generic expression",
          "[families][property]") {
  test_support::Rng rng(555);
  for (Family k : all_families()) {
    for (int trial = 0; trial < 50; ++trial) {
      StateParams base;
      base.alpha = rng.uniform(0.1, 2.5);
      base.psi = rng.uniform(-3.0, 3.0);
      base.r = rng.uniform(-1.2, 1.2);
      base.chi = rng.uniform(-3.0, 3.0);
      base.n_th = rng.uniform(0.05, 3.0);

      ParamFamily f;
      f.kind = k;
      f.base = base;
      switch (k) {
        case Family::kAlpha: f.point = base.alpha; break;
        case Family::kPsi: f.point = base.psi; break;
        case Family::kSigma2: f.point = std::exp(-2.0 * base.r); break;
        case Family::kR: f.point = base.r; break;
        case Family::kChi: f.point = base.chi; break;
        case Family::kNth: f.point = base.n_th; break;
        case Family::kPurity:
          f.point = 1.0 / (2.0 * base.n_th + 1.0);
          break;
        case Family::kLossEta:
          f.alpha0 = rng.uniform(0.0, 2.0);
          f.sigma = rng.uniform(0.4, 2.5);
          f.point = rng.uniform(0.05, 0.95);
          break;
      }

      const double closed = closed_form_qfi(f);
      const double generic = qfi_single(state_at(f), analytic_derivative(f));
      CHECK_THAT(generic,
                 WithinAbs(closed, 1e-10 * std::max(1.0, std::abs(closed))));
    }
  }
}

TEST_CASE("cross couplings at a generic point", "[families]") {
  StateParams p;
  p.alpha = 1.0;
  p.psi = 0.3;
  p.r = 0.5;
  p.chi = 0.7;
  p.n_th = 0.5;
  const GaussianState s = from_params(p);

  const std::vector<Family> dirs = {Family::kAlpha, Family::kPsi, Family::kR,
                                    Family::kChi, Family::kNth};
  std::vector<LabeledDerivative> ds;
  for (Family k : dirs) {
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
  const FisherMatrix m = qfi_matrix(s, ds);

  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      const double expected =
          off_diagonal_closed_form(dirs[i], dirs[j], p);
      CHECK_THAT(m.at(i, j), WithinAbs(expected, 1e-10));
    }
}

TEST_CASE("the only surviving cross couplings involve the rotation angle",
          "[families]") {
  StateParams p;
  p.alpha = 1.0;
  p.psi = 0.0;
  p.r = 0.5 * std::log(2.0);  // sigma^2 = 1/2
  p.chi = M_PI / 4.0;
  p.n_th = 0.0;
  CHECK_THAT(off_diagonal_closed_form(Family::kAlpha, Family::kPsi, p),
             WithinAbs(3.0, 1e-12));
  CHECK_THAT(off_diagonal_closed_form(Family::kChi, Family::kPsi, p),
             WithinAbs(closed_at(Family::kChi, p, p.chi), 1e-12));
  CHECK_THAT(off_diagonal_closed_form(Family::kAlpha, Family::kChi, p),
             WithinAbs(0.0, 1e-15));
  CHECK_THAT(off_diagonal_closed_form(Family::kR, Family::kNth, p),
             WithinAbs(0.0, 1e-15));
  CHECK_THROWS_AS(off_diagonal_closed_form(Family::kAlpha, Family::kAlpha, p),
                  DomainError);
  CHECK_THROWS_AS(
      off_diagonal_closed_form(Family::kAlpha, Family::kLossEta, p),
      DomainError);
}

TEST_CASE("loss information over a parameter grid", "[families]") {
  for (double eta : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (double sigma : {0.5, 1.0, 2.0})
      for (double alpha0 : {0.0, 1.0, 2.0}) {
        ParamFamily f;
        f.kind = Family::kLossEta;
        f.alpha0 = alpha0;
        f.sigma = sigma;
        f.point = eta;
        const double closed = closed_form_qfi(f);
        const double generic =
            qfi_single(state_at(f), analytic_derivative(f));
        CHECK_THAT(generic,
                   WithinAbs(closed, 1e-10 * std::max(1.0, closed)));
      }
}

TEST_CASE("interferometric phase maps onto loss by the chain rule",
          "[families]") {
  // With eta = sin^2(phi), the information in phi is sin^2(2 phi) times the
  // information in eta. Both sides evaluate through independent routes.
  ParamFamily f;
  f.kind = Family::kLossEta;
  f.alpha0 = 1.2;
  f.sigma = 0.7;
  for (double phi : {0.3, 0.7, 1.1}) {
    f.point = std::sin(phi) * std::sin(phi);
    const double i_eta = closed_form_qfi(f);
    const double jac = std::sin(2.0 * phi);

    StateDerivative d = analytic_derivative(f);
    d.d_mean.x *= jac;
    d.d_mean.p *= jac;
    d.d_cov.xx *= jac;
    d.d_cov.xp *= jac;
    d.d_cov.pp *= jac;
    const double i_phi = qfi_single(state_at(f), d);
    CHECK_THAT(i_phi, WithinAbs(i_eta * jac * jac,
                                1e-10 * std::max(1.0, i_eta)));
  }
}

TEST_CASE("family points are validated", "[families][errors]") {
  StateParams base;

  CHECK_THROWS_AS(closed_at(Family::kAlpha, base, -0.5), DomainError);
  CHECK_THROWS_AS(closed_at(Family::kSigma2, base, 0.0), DomainError);
  CHECK_THROWS_AS(closed_at(Family::kNth, base, 0.0), DomainError);
  CHECK_THROWS_AS(closed_at(Family::kPurity, base, 0.0), DomainError);
  CHECK_THROWS_AS(closed_at(Family::kPurity, base, 1.5), DomainError);

  ParamFamily f;
  f.kind = Family::kLossEta;
  f.alpha0 = 1.0;
  f.sigma = 0.5;
  f.point = 0.0;  // boundary needs sigma = 1 to stay meaningful
  CHECK_THROWS_AS(closed_form_qfi(f), DomainError);
  f.point = 1.0;
  CHECK_THROWS_AS(closed_form_qfi(f), DomainError);
}
