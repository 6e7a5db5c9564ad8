// Command-line front end: evaluates states, information, bounds, scans and
// oracle cross-checks, printing deterministic JSON (one object per run, 17
// significant digits) or CSV for the grid commands.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qcrb/crosscheck.hpp"
#include "qcrb/errors.hpp"
#include "qcrb/families.hpp"
#include "qcrb/fd_oracle.hpp"
#include "qcrb/fock_oracle.hpp"
#include "qcrb/gaussian.hpp"
#include "qcrb/json_io.hpp"
#include "qcrb/phase_scaling.hpp"
#include "qcrb/qfi.hpp"

namespace {

using namespace qcrb;

struct StateArgs {
  std::string params_file;
  double alpha = 0.0, psi = 0.0, r = 0.0, chi = 0.0, nth = 0.0;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_psi = nullptr;
  CLI::Option* o_r = nullptr;
  CLI::Option* o_chi = nullptr;
  CLI::Option* o_nth = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--params", params_file,
                    "JSON file with keys alpha, psi, r, chi, n_th; explicit "
                    "flags override it");
    o_alpha = cmd->add_option("--alpha", alpha, "coherent amplitude");
    o_psi = cmd->add_option("--psi", psi, "rotation angle");
    o_r = cmd->add_option("--r", r, "squeezing parameter, sigma = exp(-r)");
    o_chi = cmd->add_option("--chi", chi, "squeezing angle");
    o_nth = cmd->add_option("--nth,--n_th", nth, "thermal occupation");
  }

  StateParams resolve() const {
    StateParams p;
    if (!params_file.empty()) {
      std::ifstream in(params_file);
      if (!in) throw DomainError("cannot open params file " + params_file);
      std::stringstream buf;
      buf << in.rdbuf();
      p = params_from_json(buf.str());
    }
    if (o_alpha->count()) p.alpha = alpha;
    if (o_psi->count()) p.psi = psi;
    if (o_r->count()) p.r = r;
    if (o_chi->count()) p.chi = chi;
    if (o_nth->count()) p.n_th = nth;
    return p;
  }
};

struct FamilyArgs {
  std::string family;
  double sigma2 = 1.0, purity_pt = 1.0, alpha0 = 0.0, sigma = 1.0, eta = 0.0;
  CLI::Option* o_sigma2 = nullptr;
  CLI::Option* o_purity = nullptr;

  void attach(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option(
        "--family", family,
        "parameter family: alpha, psi, sigma2, r, chi, n_th, purity, "
        "loss_eta");
    if (required) opt->required();
    o_sigma2 = cmd->add_option("--sigma2", sigma2,
                               "sigma^2 evaluation point (sigma2 family; "
                               "defaults to exp(-2 r))");
    o_purity = cmd->add_option("--purity", purity_pt,
                               "purity evaluation point (purity family; "
                               "defaults to 1/(2 n_th + 1))");
    cmd->add_option("--alpha0", alpha0,
                    "input amplitude of the loss channel (loss_eta family)");
    cmd->add_option("--sigma", sigma,
                    "input standard deviation ratio of the loss channel");
    cmd->add_option("--eta", eta, "loss fraction evaluation point");
  }

  ParamFamily resolve(const StateParams& base) const {
    ParamFamily f;
    f.kind = family_from_name(family);
    f.base = base;
    switch (f.kind) {
      case Family::kAlpha: f.point = base.alpha; break;
      case Family::kPsi: f.point = base.psi; break;
      case Family::kSigma2:
        f.point = o_sigma2->count() ? sigma2 : std::exp(-2.0 * base.r);
        break;
      case Family::kR: f.point = base.r; break;
      case Family::kChi: f.point = base.chi; break;
      case Family::kNth: f.point = base.n_th; break;
      case Family::kPurity:
        f.point =
            o_purity->count() ? purity_pt : 1.0 / (2.0 * base.n_th + 1.0);
        break;
      case Family::kLossEta:
        f.alpha0 = alpha0;
        f.sigma = sigma;
        f.point = eta;
        break;
    }
    return f;
  }
};

void emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot open output file " + out_path);
  out << body;
  if (!out) throw ComputationError("failed writing " + out_path);
}

int run_state(const StateArgs& sa) {
  const GaussianState s = from_params(sa.resolve());
  JsonObject o;
  o.add_number("mean_x", s.mean.x);
  o.add_number("mean_p", s.mean.p);
  o.add_number("cov_xx", s.cov.xx);
  o.add_number("cov_xp", s.cov.xp);
  o.add_number("cov_pp", s.cov.pp);
  o.add_number("purity", purity(s));
  o.add_bool("physical", is_physical(s.cov));
  std::cout << o.str() << "\n";
  return 0;
}

int run_qfi(const StateArgs& sa, const FamilyArgs& fa,
            const std::string& oracle, long q) {
  const ParamFamily f = fa.resolve(sa.resolve());
  const double closed = closed_form_qfi(f);
  const double generic = qfi_single(state_at(f), analytic_derivative(f));

  JsonObject o;
  o.add_string("family", std::string(family_name(f.kind)));
  o.add_number("I_closed", closed);
  o.add_number("I_generic", generic);
  if (oracle == "none") {
    o.add_null("I_oracle");
  } else if (oracle == "fd") {
    o.add_number("I_oracle",
                 qfi_from_fidelity(curve_of(f), f.point, default_step(f)).value);
  } else if (oracle == "fock") {
    const FockQfiResult res = qfi_fock_adaptive(f, default_step(f));
    if (!res.converged)
      throw ComputationError(
          "fock oracle did not converge within the truncation cap");
    o.add_number("I_oracle", res.value);
  } else {
    throw DomainError("unknown oracle '" + oracle +
                      "'; expected none, fd or fock");
  }
  o.add_number("crb", crb_single(closed, q));
  o.add_int("Q", q);
  std::cout << o.str() << "\n";
  return 0;
}

int run_qfi_matrix(const StateArgs& sa, const std::string& wrt, long q) {
  const StateParams base = sa.resolve();

  std::vector<LabeledDerivative> ds;
  std::stringstream ss(wrt);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    ParamFamily f;
    f.kind = family_from_name(name);
    if (f.kind == Family::kLossEta)
      throw DomainError(
          "loss_eta needs its channel context; use 'qfi --family loss_eta'");
    f.base = base;
    switch (f.kind) {
      case Family::kAlpha: f.point = base.alpha; break;
      case Family::kPsi: f.point = base.psi; break;
      case Family::kSigma2: f.point = std::exp(-2.0 * base.r); break;
      case Family::kR: f.point = base.r; break;
      case Family::kChi: f.point = base.chi; break;
      case Family::kNth: f.point = base.n_th; break;
      default: f.point = 1.0 / (2.0 * base.n_th + 1.0); break;
    }
    ds.push_back({name, analytic_derivative(f)});
  }
  if (ds.empty()) throw DomainError("--wrt selected no directions");

  const FisherMatrix info = qfi_matrix(from_params(base), ds);

  JsonObject o;
  o.add_raw("labels", json_string_array(info.labels));
  o.add_raw("entries", json_matrix(info.entries, info.dim()));
  o.add_int("Q", q);
  try {
    const FisherMatrix bound = crb_matrix(info, q);
    o.add_bool("singular", false);
    o.add_raw("crb", json_matrix(bound.entries, bound.dim()));
  } catch (const ComputationError& e) {
    o.add_bool("singular", true);
    o.add_null("crb");
    o.add_string("flat_direction", e.what());
  }
  std::cout << o.str() << "\n";
  return 0;
}

struct VarySpec {
  std::string name;
  double start = 0.0, stop = 0.0;
  long count = 0;
};

VarySpec parse_vary(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw DomainError("--vary expects name=start:stop:count");
  VarySpec v;
  v.name = text.substr(0, eq);
  const std::string rest = text.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = rest.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw DomainError("--vary expects name=start:stop:count");
  try {
    v.start = std::stod(rest.substr(0, c1));
    v.stop = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
    v.count = std::stol(rest.substr(c2 + 1));
  } catch (const std::exception&) {
    throw DomainError("--vary: could not parse '" + rest + "'");
  }
  if (!(std::isfinite(v.start) && std::isfinite(v.stop)))
    throw DomainError("--vary: start and stop must be finite");
  if (v.count < 2) throw DomainError("--vary: need at least two grid points");
  return v;
}

int run_scan(const StateArgs& sa, const FamilyArgs& fa,
             const std::string& vary_text, const std::string& out_path,
             long q) {
  const VarySpec vary = parse_vary(vary_text);
  const StateParams base = sa.resolve();

  // The varied slot overrides flags point by point; everything else is
  // rebuilt from the flags so grid points stay independent.
  auto family_for = [&](double v) {
    StateParams b = base;
    ParamFamily f = fa.resolve(b);
    const std::string& n = vary.name;
    if (n == "alpha") {
      b.alpha = v;
    } else if (n == "psi") {
      b.psi = v;
    } else if (n == "r") {
      b.r = v;
    } else if (n == "chi") {
      b.chi = v;
    } else if (n == "nth" || n == "n_th") {
      b.n_th = v;
    } else if (n == "sigma2") {
      if (f.kind != Family::kSigma2)
        b.r = -0.5 * std::log(v);
    } else if (n == "alpha0" || n == "sigma" || n == "eta") {
      if (f.kind != Family::kLossEta)
        throw DomainError("--vary " + n + " applies only to loss_eta");
    } else {
      throw DomainError("--vary: unknown parameter '" + n + "'");
    }

    f = fa.resolve(b);
    if (n == "alpha0") f.alpha0 = v;
    if (n == "sigma") f.sigma = v;
    if (n == "eta") f.point = v;
    if (n == "sigma2" && f.kind == Family::kSigma2) f.point = v;
    // when the varied slot is the family's own parameter, resolve() above
    // already picked v up through the base
    return f;
  };

  struct Row {
    double theta, closed, generic, crb;
  };
  std::vector<Row> rows(vary.count);

  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(vary.count)));
  std::vector<std::future<void>> tasks;
  for (unsigned w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (long i = w; i < vary.count; i += workers) {
        const double theta =
            vary.start + (vary.stop - vary.start) *
                             (double(i) / double(vary.count - 1));
        const ParamFamily f = family_for(theta);
        Row& row = rows[i];
        row.theta = theta;
        row.closed = closed_form_qfi(f);
        row.generic = qfi_single(state_at(f), analytic_derivative(f));
        row.crb = row.closed > 0.0
                      ? 1.0 / (double(q) * row.closed)
                      : std::numeric_limits<double>::infinity();
      }
    }));
  }
  for (auto& t : tasks) t.get();

  std::string csv = "theta,I_closed,I_generic,crb\n";
  for (const Row& row : rows) {
    csv += format_double(row.theta);
    csv += ",";
    csv += format_double(row.closed);
    csv += ",";
    csv += format_double(row.generic);
    csv += ",";
    csv += format_double(row.crb);
    csv += "\n";
  }
  emit(csv, out_path);
  return 0;
}

int run_phase_scaling(const std::string& n_list, bool coherent_only,
                      const std::string& out_path) {
  std::vector<double> ns;
  std::stringstream ss(n_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      ns.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw DomainError("--n-total: could not parse '" + tok + "'");
    }
  }
  if (ns.size() < 2)
    throw DomainError("--n-total needs at least two photon numbers");

  std::string csv = "n_total,split,alpha_sq,sinh2_r,i_eff,delta_psi\n";
  std::vector<double> dps;
  for (double n : ns) {
    const PhasePoint pt = optimize_phase_point(n, coherent_only);
    dps.push_back(pt.delta_psi);
    csv += format_double(pt.n_total);
    csv += ",";
    csv += format_double(pt.split);
    csv += ",";
    csv += format_double(pt.alpha_sq);
    csv += ",";
    csv += format_double(pt.sinh2_r);
    csv += ",";
    csv += format_double(pt.info);
    csv += ",";
    csv += format_double(pt.delta_psi);
    csv += "\n";
  }
  emit(csv, out_path);

  const LogLogFit fit = fit_loglog(ns, dps);
  JsonObject o;
  o.add_number("slope", fit.slope);
  o.add_number("intercept", fit.intercept);
  o.add_number("r_squared", fit.r_squared);
  o.add_int("points", fit.points);
  o.add_bool("coherent_only", coherent_only);
  std::cout << o.str() << "\n";
  return 0;
}

int run_check(const std::string& oracle, const std::string& families,
              std::uint64_t seed, int points, int pair_points) {
  CheckSettings st;
  st.oracle = oracle_from_name(oracle);
  st.seed = seed;
  st.oracle_points = points;
  st.pair_points = pair_points;
  if (families != "all") {
    std::stringstream ss(families);
    std::string name;
    while (std::getline(ss, name, ','))
      if (!name.empty()) st.families.push_back(family_from_name(name));
  }

  const CheckReport rep = qcrb::run_check(st);
  std::cout << to_json(rep) << "\n";
  if (!rep.pass) {
    for (const auto& fc : rep.families) {
      if (!fc.pass) {
        std::cerr << "check failed: family " << family_name(fc.family) << " ("
                  << fc.detail << ")\n";
        break;
      }
    }
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quantum Cramer-Rao bounds for single-mode Gaussian states (hbar = 2 "
      "units: vacuum covariance is the identity)"};
  app.require_subcommand(1);

  auto* c_state = app.add_subcommand(
      "state", "print mean, covariance, purity and physicality as JSON");
  StateArgs sa_state;
  sa_state.attach(c_state);

  auto* c_qfi = app.add_subcommand(
      "qfi", "information and estimation bound along one parameter family");
  StateArgs sa_qfi;
  FamilyArgs fa_qfi;
  sa_qfi.attach(c_qfi);
  fa_qfi.attach(c_qfi, true);
  std::string qfi_oracle = "none";
  long qfi_q = 1;
  c_qfi->add_option("--oracle", qfi_oracle,
                    "cross-check route: none, fd or fock");
  c_qfi->add_option("--Q", qfi_q, "number of independent repetitions");

  auto* c_matrix = app.add_subcommand(
      "qfi-matrix", "Fisher information matrix over chosen directions");
  StateArgs sa_matrix;
  sa_matrix.attach(c_matrix);
  std::string wrt = "alpha,psi,r,chi,n_th";
  long matrix_q = 1;
  c_matrix->add_option("--wrt", wrt, "comma-separated directions");
  c_matrix->add_option("--Q", matrix_q, "number of independent repetitions");

  auto* c_scan = app.add_subcommand(
      "scan", "information along a parameter grid, CSV output");
  StateArgs sa_scan;
  FamilyArgs fa_scan;
  sa_scan.attach(c_scan);
  fa_scan.attach(c_scan, true);
  std::string vary, scan_out;
  long scan_q = 1;
  c_scan->add_option("--vary", vary, "grid spec name=start:stop:count")
      ->required();
  c_scan->add_option("--out", scan_out, "CSV file (default stdout)");
  c_scan->add_option("--Q", scan_q, "number of independent repetitions");

  auto* c_phase = app.add_subcommand(
      "phase-scaling",
      "optimal phase sensitivity against the photon budget");
  std::string n_list =
      "1e2,3.1622776601683795e2,1e3,3.1622776601683795e3,1e4,"
      "3.1622776601683795e4,1e5,3.1622776601683795e5,1e6";
  std::string phase_out;
  bool coherent_only = false;
  c_phase->add_option("--n-total", n_list, "comma-separated photon numbers");
  c_phase->add_option("--out", phase_out, "CSV file for the per-N rows")
      ->required();
  c_phase->add_flag("--coherent-only", coherent_only,
                    "force r = 0 (no squeezing)");

  auto* c_check = app.add_subcommand(
      "check", "run the seeded oracle comparison campaign");
  std::string check_oracle = "fd";
  std::string check_families = "all";
  std::uint64_t check_seed = 1;
  int check_points = -1;
  int check_pairs = 1000;
  c_check->add_option("--oracle", check_oracle, "fd or fock");
  c_check->add_option("--families", check_families,
                      "comma-separated families, or all");
  c_check->add_option("--seed", check_seed, "sampler seed");
  c_check->add_option("--points", check_points,
                      "oracle points per family (default 100 fd / 20 fock)");
  c_check->add_option("--pair-points", check_pairs,
                      "closed-vs-generic points per family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_state)) return run_state(sa_state);
    if (app.got_subcommand(c_qfi))
      return run_qfi(sa_qfi, fa_qfi, qfi_oracle, qfi_q);
    if (app.got_subcommand(c_matrix))
      return run_qfi_matrix(sa_matrix, wrt, matrix_q);
    if (app.got_subcommand(c_scan))
      return run_scan(sa_scan, fa_scan, vary, scan_out, scan_q);
    if (app.got_subcommand(c_phase))
      return run_phase_scaling(n_list, coherent_only, phase_out);
    if (app.got_subcommand(c_check))
      return run_check(check_oracle, check_families, check_seed, check_points,
                       check_pairs);
  } catch (const qcrb::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qcrb::ComputationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
