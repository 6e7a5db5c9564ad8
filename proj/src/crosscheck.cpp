#include "qcrb/crosscheck.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>

#include "qcrb/errors.hpp"
#include "qcrb/fd_oracle.hpp"
#include "qcrb/fidelity.hpp"
#include "qcrb/fock_oracle.hpp"
#include "qcrb/json_io.hpp"
#include "qcrb/qfi.hpp"

namespace qcrb {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

// Derivative step for one slot of the decomposition, matching the family
// default of 1e-4 of the parameter scale.
double slot_step(Family f, double value) {
  ParamFamily tmp;
  tmp.kind = f;
  tmp.point = value;
  return default_step(tmp);
}

}  // namespace

Oracle oracle_from_name(std::string_view name) {
  if (name == "fd") return Oracle::kFd;
  if (name == "fock") return Oracle::kFock;
  throw DomainError("unknown oracle '" + std::string(name) +
                    "'; expected fd or fock");
}

std::string_view oracle_name(Oracle o) {
  return o == Oracle::kFd ? "fd" : "fock";
}

double Sampler::uniform(double a, double b) {
  // 53 uniform bits; identical on every platform, unlike the standard
  // library distributions.
  const double u = double(eng_() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

StateParams Sampler::state_params(bool fock_regime) {
  StateParams p;
  p.alpha = uniform(0.0, fock_regime ? 2.0 : 5.0);
  p.psi = uniform(-kPi, kPi);
  const double r_hi = fock_regime ? 1.0 : 1.5;
  p.r = uniform(-r_hi, r_hi);
  p.chi = uniform(-kPi, kPi);
  p.n_th = uniform(fock_regime ? 0.05 : 0.0, fock_regime ? 3.0 : 5.0);
  return p;
}

ParamFamily Sampler::family_point(Family kind, bool fock_regime) {
  ParamFamily f;
  f.kind = kind;
  f.base = state_params(fock_regime);
  const double r_hi = fock_regime ? 1.0 : 1.5;
  const double hot = fock_regime ? 3.0 : 5.0;

  switch (kind) {
    case Family::kAlpha:
      f.point = uniform(0.05, fock_regime ? 2.0 : 5.0);
      break;
    case Family::kPsi:
      // A tiny displacement on an unsqueezed state leaves nothing for the
      // rotation to act on; keep the amplitude finite.
      f.base.alpha = uniform(0.5, fock_regime ? 2.0 : 5.0);
      f.point = uniform(-kPi, kPi);
      break;
    case Family::kSigma2:
      f.point = std::exp(-2.0 * uniform(-r_hi, r_hi));
      break;
    case Family::kR:
      f.point = uniform(-r_hi, r_hi);
      break;
    case Family::kChi: {
      // The squeezing angle is unidentifiable as r -> 0; floor |r|.
      const double mag = uniform(0.05, r_hi);
      const double sign = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
      f.base.r = sign * mag;
      f.point = uniform(-kPi, kPi);
      break;
    }
    case Family::kNth:
      f.point = uniform(fock_regime ? 0.1 : 0.05, hot);
      break;
    case Family::kPurity: {
      const double n = uniform(fock_regime ? 0.1 : 0.05, hot);
      f.point = 1.0 / (2.0 * n + 1.0);
      break;
    }
    case Family::kLossEta:
      f.alpha0 = uniform(0.5, fock_regime ? 2.0 : 3.0);
      f.sigma = uniform(fock_regime ? 0.5 : 0.3, fock_regime ? 2.0 : 3.0);
      f.point = uniform(0.05, 0.95);
      break;
  }
  return f;
}

CheckReport run_check(const CheckSettings& st) {
  const double t0 = now_seconds();
  CheckReport rep;
  rep.oracle = st.oracle;
  rep.seed = st.seed;

  const std::vector<Family> fams =
      st.families.empty() ? all_families() : st.families;
  const bool fock = st.oracle == Oracle::kFock;
  const int oracle_pts =
      st.oracle_points >= 0 ? st.oracle_points : (fock ? 20 : 100);

  for (Family fam : fams) {
    FamilyCheck fc;
    fc.family = fam;
    // Independent, reproducible stream per family so a subset run sees the
    // same draws as the full run.
    Sampler smp(st.seed + 1000003 * (static_cast<std::uint64_t>(fam) + 1));

    try {
      for (int i = 0; i < st.pair_points; ++i) {
        const ParamFamily f = smp.family_point(fam, fock);
        const double closed = closed_form_qfi(f);
        const double generic = qfi_single(state_at(f), analytic_derivative(f));
        const double rel =
            std::abs(closed - generic) / std::max(1.0, std::abs(closed));
        fc.max_rel_closed_generic = std::max(fc.max_rel_closed_generic, rel);
        if (rel > kClosedGenericTol && fc.pass) {
          fc.pass = false;
          std::ostringstream msg;
          msg << "closed " << closed << " vs generic " << generic << " at "
              << family_name(fam) << " theta0 = " << f.point;
          fc.detail = msg.str();
        }
        ++fc.pair_points;
      }

      int attempts = 0;
      const int attempt_cap = oracle_pts + std::max(20, oracle_pts * 3);
      while (fc.oracle_points < oracle_pts && attempts < attempt_cap) {
        ++attempts;
        const ParamFamily f = smp.family_point(fam, fock);
        const double closed = closed_form_qfi(f);
        double est = 0.0;
        double tol = 0.0;
        if (fock) {
          const FockQfiResult res = qfi_fock_adaptive(
              f, default_step(f), st.fock_n_start, st.fock_n_cap,
              kFockConvergenceTol);
          if (!res.converged) {
            ++fc.resampled;
            continue;
          }
          est = res.value;
          tol = kFockTol * std::max(1.0, std::abs(closed));
        } else {
          est = qfi_from_fidelity(curve_of(f), f.point, default_step(f)).value;
          tol = std::max(kFdAbsTol, kFdRelTol * std::abs(closed));
        }
        ++fc.oracle_points;
        const double err =
            std::abs(est - closed) / std::max(1.0, std::abs(closed));
        fc.max_err_oracle = std::max(fc.max_err_oracle, err);
        if (std::abs(est - closed) > tol && fc.pass) {
          fc.pass = false;
          std::ostringstream msg;
          msg << oracle_name(st.oracle) << " oracle " << est << " vs closed "
              << closed << " at " << family_name(fam)
              << " theta0 = " << f.point;
          fc.detail = msg.str();
        }
      }
      if (fc.oracle_points < oracle_pts) {
        fc.pass = false;
        fc.detail = "truncation failed to converge for too many draws";
      }
    } catch (const std::exception& e) {
      fc.pass = false;
      fc.detail = e.what();
    }

    rep.families.push_back(fc);
    rep.pass = rep.pass && fc.pass;
  }

  rep.seconds = now_seconds() - t0;
  return rep;
}

std::string to_json(const CheckReport& rep) {
  std::string families = "[";
  for (std::size_t i = 0; i < rep.families.size(); ++i) {
    const FamilyCheck& fc = rep.families[i];
    JsonObject o;
    o.add_string("family", std::string(family_name(fc.family)));
    o.add_int("pair_points", fc.pair_points);
    o.add_int("oracle_points", fc.oracle_points);
    o.add_int("resampled", fc.resampled);
    o.add_number("max_rel_closed_generic", fc.max_rel_closed_generic);
    o.add_number("max_err_oracle", fc.max_err_oracle);
    o.add_bool("pass", fc.pass);
    if (!fc.detail.empty()) o.add_string("detail", fc.detail);
    if (i) families += ",";
    families += o.str();
  }
  families += "]";

  JsonObject out;
  out.add_string("oracle", std::string(oracle_name(rep.oracle)));
  out.add_int("seed", static_cast<long>(rep.seed));
  out.add_raw("families", families);
  out.add_bool("pass", rep.pass);
  out.add_number("seconds", rep.seconds);
  return out.str();
}

MatrixCheckResult run_fock_matrix_check(std::uint64_t seed, int points,
                                        int n_start, int n_cap) {
  MatrixCheckResult res;
  Sampler smp(seed ^ 0xf15e5u);

  const Family dirs[5] = {Family::kAlpha, Family::kPsi, Family::kR,
                          Family::kChi, Family::kNth};

  int attempts = 0;
  const int attempt_cap = points + std::max(10, points * 3);
  try {
    while (res.points < points && attempts < attempt_cap) {
      ++attempts;
      StateParams base = smp.state_params(true);
      // keep every slot differentiable on both sides
      base.alpha = smp.uniform(0.3, 2.0);
      base.n_th = smp.uniform(0.1, 3.0);

      // Closed route: analytic derivatives of each decomposition slot.
      std::vector<LabeledDerivative> ds;
      for (Family dir : dirs) {
        ParamFamily f;
        f.kind = dir;
        f.base = base;
        switch (dir) {
          case Family::kAlpha: f.point = base.alpha; break;
          case Family::kPsi: f.point = base.psi; break;
          case Family::kR: f.point = base.r; break;
          case Family::kChi: f.point = base.chi; break;
          default: f.point = base.n_th; break;
        }
        ds.push_back({std::string(family_name(dir)), analytic_derivative(f)});
      }
      const FisherMatrix closed = qfi_matrix(from_params(base), ds);

      // Oracle route at increasing truncation until stable.
      FisherMatrix fock;
      bool converged = false;
      FisherMatrix prev;
      for (int n = n_start; n <= n_cap && !converged;
           n = std::min(2 * n, n_cap)) {
        auto matrix_at = [&](int levels) {
          std::vector<std::pair<std::string, Eigen::MatrixXcd>> drhos;
          for (Family dir : dirs) {
            StateParams plus = base;
            StateParams minus = base;
            double step = 0.0;
            switch (dir) {
              case Family::kAlpha:
                step = slot_step(dir, base.alpha);
                plus.alpha += step;
                minus.alpha -= step;
                break;
              case Family::kPsi:
                step = slot_step(dir, base.psi);
                plus.psi += step;
                minus.psi -= step;
                break;
              case Family::kR:
                step = slot_step(dir, base.r);
                plus.r += step;
                minus.r -= step;
                break;
              case Family::kChi:
                step = slot_step(dir, base.chi);
                plus.chi += step;
                minus.chi -= step;
                break;
              default:
                step = slot_step(dir, base.n_th);
                plus.n_th += step;
                minus.n_th -= step;
                break;
            }
            const Eigen::MatrixXcd drho =
                (build_state(plus, levels).rho - build_state(minus, levels).rho) /
                (2.0 * step);
            drhos.emplace_back(std::string(family_name(dir)), drho);
          }
          return fisher_matrix_fock(build_state(base, levels), drhos);
        };

        const FisherMatrix coarse = matrix_at(n);
        const FisherMatrix fine = matrix_at(n + 20);
        double worst = 0.0;
        for (std::size_t k = 0; k < fine.entries.size(); ++k) {
          const double scale = std::max(1.0, std::abs(fine.entries[k]));
          worst = std::max(
              worst, std::abs(fine.entries[k] - coarse.entries[k]) / scale);
        }
        if (worst <= kFockConvergenceTol) {
          converged = true;
          fock = fine;
        }
        if (n == n_cap) break;
      }
      if (!converged) {
        ++res.resampled;
        continue;
      }

      ++res.points;
      for (std::size_t i = 0; i < closed.dim(); ++i) {
        for (std::size_t j = 0; j < closed.dim(); ++j) {
          const double c = closed.at(i, j);
          const double x = fock.at(i, j);
          const double scaled = std::abs(x - c) / std::max(1.0, std::abs(c));
          res.max_scaled_err = std::max(res.max_scaled_err, scaled);
          if (scaled > kFockTol && res.pass) {
            res.pass = false;
            std::ostringstream msg;
            msg << "entry (" << closed.labels[i] << ", " << closed.labels[j]
                << "): closed " << c << " vs fock " << x;
            res.detail = msg.str();
          }
        }
      }
    }
    if (res.points < points) {
      res.pass = false;
      res.detail = "truncation failed to converge for too many draws";
    }
  } catch (const std::exception& e) {
    res.pass = false;
    res.detail = e.what();
  }
  return res;
}

FidelityCheckResult run_fidelity_check(std::uint64_t seed, int pairs,
                                       int n_start, int n_cap) {
  FidelityCheckResult res;
  Sampler smp(seed ^ 0xf1de1u);

  int attempts = 0;
  const int attempt_cap = pairs + std::max(20, pairs * 3);
  try {
    while (res.pairs < pairs && attempts < attempt_cap) {
      ++attempts;
      const StateParams pa = smp.state_params(true);
      const StateParams pb = smp.state_params(true);
      const double closed = fidelity(from_params(pa), from_params(pb));

      double fock_val = 0.0;
      bool converged = false;
      for (int n = n_start; n <= n_cap && !converged;
           n = std::min(2 * n, n_cap)) {
        const double coarse =
            uhlmann_fidelity(build_state(pa, n), build_state(pb, n));
        const double fine =
            uhlmann_fidelity(build_state(pa, n + 20), build_state(pb, n + 20));
        if (std::abs(fine - coarse) <= 1e-8) {
          converged = true;
          fock_val = fine;
        }
        if (n == n_cap) break;
      }
      if (!converged) {
        ++res.resampled;
        continue;
      }

      ++res.pairs;
      const double diff = std::abs(fock_val - closed);
      res.max_abs_diff = std::max(res.max_abs_diff, diff);
      if (diff > kFidelityPairTol && res.pass) {
        res.pass = false;
        std::ostringstream msg;
        msg << "closed fidelity " << closed << " vs truncated " << fock_val;
        res.detail = msg.str();
      }
    }
    if (res.pairs < pairs) {
      res.pass = false;
      res.detail = "truncation failed to converge for too many pairs";
    }
  } catch (const std::exception& e) {
    res.pass = false;
    res.detail = e.what();
  }
  return res;
}

}  // namespace qcrb
