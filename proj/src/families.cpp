#include "qcrb/families.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "qcrb/errors.hpp"

namespace qcrb {

namespace {

constexpr std::array<std::string_view, 8> kNames = {
    "alpha", "psi", "sigma2", "r", "chi", "n_th", "purity", "loss_eta"};

[[noreturn]] void bad_point(const ParamFamily& f, const char* requirement) {
  std::ostringstream msg;
  msg << family_name(f.kind) << " family: evaluation point " << f.point
      << " invalid, " << requirement;
  throw DomainError(msg.str());
}

void validate_loss_inputs(const ParamFamily& f) {
  if (!(std::isfinite(f.alpha0) && f.alpha0 >= 0.0))
    throw DomainError("loss_eta family: alpha0 must be finite and >= 0");
  if (!(std::isfinite(f.sigma) && f.sigma > 0.0))
    throw DomainError("loss_eta family: sigma must be finite and > 0");
}

// Point domain shared by the closed form and the analytic derivative. The
// curve itself (params_at/state_at) also tolerates the boundary points where
// the state is fine but the information diverges.
void validate_point(const ParamFamily& f) {
  if (!std::isfinite(f.point)) bad_point(f, "must be finite");
  switch (f.kind) {
    case Family::kAlpha:
      if (f.point < 0.0) bad_point(f, "alpha must be >= 0");
      break;
    case Family::kSigma2:
      if (!(f.point > 0.0)) bad_point(f, "sigma^2 must be > 0");
      break;
    case Family::kNth:
      if (!(f.point > 0.0))
        bad_point(f, "information diverges at n_th = 0; need n_th > 0");
      break;
    case Family::kPurity:
      if (!(f.point > 0.0 && f.point < 1.0))
        bad_point(f, "need 0 < P < 1 (information diverges at the ends)");
      break;
    case Family::kLossEta:
      validate_loss_inputs(f);
      if (f.point == 0.0) {
        if (f.sigma != 1.0)
          bad_point(f, "eta = 0 is only regular for sigma = 1");
      } else if (!(f.point > 0.0 && f.point < 1.0)) {
        bad_point(f, "need eta in [0, 1)");
      }
      break;
    default:
      break;
  }
}

double p0_of(const StateParams& p) { return 1.0 / (2.0 * p.n_th + 1.0); }

}  // namespace

Family family_from_name(std::string_view name) {
  if (name == "nth") return Family::kNth;  // spelling of the --nth flag
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (name == kNames[i]) return static_cast<Family>(i);
  std::ostringstream msg;
  msg << "unknown family '" << name << "'; expected one of";
  for (auto n : kNames) msg << " " << n;
  throw DomainError(msg.str());
}

std::string_view family_name(Family f) {
  return kNames[static_cast<std::size_t>(f)];
}

std::vector<Family> all_families() {
  std::vector<Family> out;
  for (std::size_t i = 0; i < kNames.size(); ++i)
    out.push_back(static_cast<Family>(i));
  return out;
}

StateParams params_at(const ParamFamily& f, double theta) {
  if (!std::isfinite(theta))
    throw DomainError("family evaluation point must be finite");
  StateParams p = f.base;
  switch (f.kind) {
    case Family::kAlpha:
      p.alpha = theta;
      break;
    case Family::kPsi:
      p.psi = theta;
      break;
    case Family::kSigma2:
      if (!(theta > 0.0))
        throw DomainError("sigma2 family: sigma^2 must be > 0");
      p.r = -0.5 * std::log(theta);
      break;
    case Family::kR:
      p.r = theta;
      break;
    case Family::kChi:
      p.chi = theta;
      break;
    case Family::kNth:
      p.n_th = theta;
      break;
    case Family::kPurity:
      if (!(theta > 0.0 && theta <= 1.0))
        throw DomainError("purity family: need P in (0, 1]");
      p.n_th = 0.5 * (1.0 / theta - 1.0);
      break;
    case Family::kLossEta: {
      validate_loss_inputs(f);
      if (!(theta >= 0.0 && theta < 1.0))
        throw DomainError("loss_eta family: need eta in [0, 1)");
      // Effective decomposition of the lossy state: its covariance is
      // diag(A, B) with A, B the damped quadrature variances.
      const double s = f.sigma * f.sigma;
      const double A = s + theta * (1.0 - s);
      const double B = 1.0 / s + theta * (1.0 - 1.0 / s);
      p.alpha = std::sqrt(1.0 - theta) * f.alpha0;
      p.psi = 0.0;
      p.r = 0.25 * std::log(B / A);
      p.chi = 0.0;
      p.n_th = 0.5 * (std::sqrt(A * B) - 1.0);
      break;
    }
  }
  // Reuse the state constructor's validation so every returned parameter set
  // is buildable.
  (void)from_params(p);
  return p;
}

GaussianState state_at(const ParamFamily& f, double theta) {
  if (f.kind == Family::kLossEta) {
    validate_loss_inputs(f);
    StateParams in;
    in.alpha = f.alpha0;
    in.r = -std::log(f.sigma);
    return apply_loss(from_params(in), theta);
  }
  return from_params(params_at(f, theta));
}

GaussianState state_at(const ParamFamily& f) { return state_at(f, f.point); }

StateDerivative analytic_derivative(const ParamFamily& f) {
  validate_point(f);
  StateDerivative d;

  if (f.kind == Family::kLossEta) {
    const double s = f.sigma * f.sigma;
    d.d_mean.x = -f.alpha0 / std::sqrt(1.0 - f.point);
    d.d_cov.xx = 1.0 - s;
    d.d_cov.pp = 1.0 - 1.0 / s;
    return d;
  }

  const StateParams p = params_at(f, f.point);
  const double c = 2.0 * p.n_th + 1.0;
  const double s = std::exp(-2.0 * p.r);
  const double phi = p.chi + p.psi;
  const double c2 = std::cos(2.0 * phi);
  const double s2 = std::sin(2.0 * phi);

  switch (f.kind) {
    case Family::kAlpha:
      d.d_mean.x = 2.0 * std::cos(p.psi);
      d.d_mean.p = 2.0 * std::sin(p.psi);
      break;
    case Family::kPsi:
      d.d_mean.x = -2.0 * p.alpha * std::sin(p.psi);
      d.d_mean.p = 2.0 * p.alpha * std::cos(p.psi);
      [[fallthrough]];
    case Family::kChi:
      // Rotating the squeezing ellipse: d/dphi of c b M(2 phi) with
      // b = (s - 1/s)/2.
      d.d_cov.xx = -c * (s - 1.0 / s) * s2;
      d.d_cov.xp = c * (s - 1.0 / s) * c2;
      d.d_cov.pp = c * (s - 1.0 / s) * s2;
      break;
    case Family::kSigma2: {
      const double da = 0.5 * (1.0 - 1.0 / (s * s));
      const double db = 0.5 * (1.0 + 1.0 / (s * s));
      d.d_cov.xx = c * (da + db * c2);
      d.d_cov.xp = c * db * s2;
      d.d_cov.pp = c * (da - db * c2);
      break;
    }
    case Family::kR: {
      // Chain rule through sigma^2 = exp(-2 r).
      const double da = 0.5 * (1.0 - 1.0 / (s * s));
      const double db = 0.5 * (1.0 + 1.0 / (s * s));
      const double ds_dr = -2.0 * s;
      d.d_cov.xx = ds_dr * c * (da + db * c2);
      d.d_cov.xp = ds_dr * c * db * s2;
      d.d_cov.pp = ds_dr * c * (da - db * c2);
      break;
    }
    case Family::kNth: {
      const GaussianState st = from_params(p);
      d.d_cov.xx = 2.0 * st.cov.xx / c;
      d.d_cov.xp = 2.0 * st.cov.xp / c;
      d.d_cov.pp = 2.0 * st.cov.pp / c;
      d.d_nth = 1.0;
      break;
    }
    case Family::kPurity: {
      const GaussianState st = from_params(p);
      const double dn_dp = -0.5 / (f.point * f.point);
      d.d_cov.xx = 2.0 * st.cov.xx / c * dn_dp;
      d.d_cov.xp = 2.0 * st.cov.xp / c * dn_dp;
      d.d_cov.pp = 2.0 * st.cov.pp / c * dn_dp;
      d.d_nth = dn_dp;
      break;
    }
    default:
      break;
  }
  return d;
}

double closed_form_qfi(const ParamFamily& f) {
  validate_point(f);

  if (f.kind == Family::kLossEta) {
    const double eta = f.point;
    const double s = f.sigma * f.sigma;
    const double a0 = f.alpha0;
    const double disp = a0 * a0 / (s + eta * (1.0 - s));
    double noise = 0.0;
    if (s != 1.0) {
      const double m = 1.0 - s;
      noise = (1.0 - 2.0 * eta * (1.0 - eta)) * m * m /
              (2.0 * eta * (2.0 * s + eta * (1.0 - eta) * m * m));
    }
    return (disp + noise) / (1.0 - eta);
  }

  const StateParams p = params_at(f, f.point);
  const double p0 = p0_of(p);
  const double s = std::exp(-2.0 * p.r);  // sigma^2
  const double cc = std::cos(p.chi) * std::cos(p.chi);
  const double ss = std::sin(p.chi) * std::sin(p.chi);

  switch (f.kind) {
    case Family::kAlpha:
      return 4.0 * p0 * (cc / s + s * ss);
    case Family::kPsi: {
      const double a2 = p.alpha * p.alpha;
      const double noise = (1.0 - s * s) * (1.0 - s * s) /
                           ((1.0 + p0 * p0) * s * s);
      return 4.0 * p0 * a2 * (s * cc + ss / s) + noise;
    }
    case Family::kSigma2:
      return 1.0 / ((1.0 + p0 * p0) * f.point * f.point);
    case Family::kR:
      return 4.0 / (1.0 + p0 * p0);
    case Family::kChi:
      return (1.0 - s * s) * (1.0 - s * s) / ((1.0 + p0 * p0) * s * s);
    case Family::kNth:
      return 1.0 / (f.point + f.point * f.point);
    case Family::kPurity: {
      const double p2 = f.point * f.point;
      return 1.0 / (p2 - p2 * p2);
    }
    default:
      throw DomainError("closed_form_qfi: unsupported family");
  }
}

double off_diagonal_closed_form(Family a, Family b, const StateParams& at) {
  auto in_decomposition = [](Family f) {
    return f == Family::kAlpha || f == Family::kPsi || f == Family::kSigma2 ||
           f == Family::kR || f == Family::kChi || f == Family::kNth;
  };
  if (!in_decomposition(a) || !in_decomposition(b))
    throw DomainError(
        "off_diagonal_closed_form: both directions must belong to the "
        "five-parameter decomposition");
  if (a == b)
    throw DomainError("off_diagonal_closed_form: directions must differ");

  const bool chi_psi = (a == Family::kChi && b == Family::kPsi) ||
                       (a == Family::kPsi && b == Family::kChi);
  const bool alpha_psi = (a == Family::kAlpha && b == Family::kPsi) ||
                         (a == Family::kPsi && b == Family::kAlpha);
  const double p0 = p0_of(at);
  const double s = std::exp(-2.0 * at.r);

  if (chi_psi)
    return (1.0 - s * s) * (1.0 - s * s) / ((1.0 + p0 * p0) * s * s);
  if (alpha_psi)
    return 2.0 * p0 * at.alpha * (1.0 / s - s) * std::sin(2.0 * at.chi);
  return 0.0;
}

}  // namespace qcrb
