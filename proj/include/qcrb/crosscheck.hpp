#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qcrb/families.hpp"

namespace qcrb {

// Seeded comparison campaigns: closed forms against the generic information
// engine, and both against the independent oracles. Shared by the check
// subcommand and the acceptance suite so they cannot drift apart.

enum class Oracle { kFd, kFock };
Oracle oracle_from_name(std::string_view name);
std::string_view oracle_name(Oracle o);

// Closed form vs generic engine, relative with a floor of 1 on the scale.
inline constexpr double kClosedGenericTol = 1e-10;
// Fidelity-curvature oracle: relative tolerance with an absolute floor.
inline constexpr double kFdRelTol = 1e-4;
inline constexpr double kFdAbsTol = 1e-8;
// Truncated-basis oracle, scaled by max(1, |closed|) per entry.
inline constexpr double kFockTol = 1e-4;
// Truncation acceptance: estimates at n_max and n_max + 20 must agree to
// this (again scaled by max(1, |value|)).
inline constexpr double kFockConvergenceTol = 1e-6;
// Closed-form fidelity vs truncated Uhlmann fidelity, absolute.
inline constexpr double kFidelityPairTol = 1e-6;

struct CheckSettings {
  std::vector<Family> families;  // empty selects all
  std::uint64_t seed = 1;
  Oracle oracle = Oracle::kFd;
  int pair_points = 1000;        // closed vs generic draws per family
  int oracle_points = -1;        // -1 selects 100 (fd) or 20 (fock)
  // Truncation ladder for the fock oracle. The cap is kept moderate here:
  // extreme draws (hot and strongly squeezed) that want more levels are
  // resampled and counted instead of burning minutes of dense linear
  // algebra.
  int fock_n_start = 80;
  int fock_n_cap = 180;
};

struct FamilyCheck {
  Family family = Family::kAlpha;
  int pair_points = 0;
  int oracle_points = 0;
  int resampled = 0;  // draws discarded for unconverged truncation
  double max_rel_closed_generic = 0.0;
  double max_err_oracle = 0.0;  // |oracle - closed| / max(1, |closed|)
  bool pass = true;
  std::string detail;
};

struct CheckReport {
  Oracle oracle = Oracle::kFd;
  std::uint64_t seed = 1;
  std::vector<FamilyCheck> families;
  bool pass = true;
  double seconds = 0.0;
};

CheckReport run_check(const CheckSettings& settings);
std::string to_json(const CheckReport& report);

// Five-parameter Fisher matrices (alpha, psi, r, chi, n_th) against the
// truncated-basis oracle, entrywise to kFockTol * max(1, |entry|).
struct MatrixCheckResult {
  int points = 0;
  int resampled = 0;
  double max_scaled_err = 0.0;
  bool pass = true;
  std::string detail;
};
MatrixCheckResult run_fock_matrix_check(std::uint64_t seed, int points,
                                        int n_start = 80, int n_cap = 180);

// Closed-form Gaussian fidelity against the truncated-basis Uhlmann value
// on random pairs.
struct FidelityCheckResult {
  int pairs = 0;
  int resampled = 0;
  double max_abs_diff = 0.0;
  bool pass = true;
  std::string detail;
};
FidelityCheckResult run_fidelity_check(std::uint64_t seed, int pairs,
                                       int n_start = 80, int n_cap = 180);

// Deterministic parameter sampler. Variates are shaped from raw mt19937_64
// draws only, so sequences are identical across platforms and standard
// libraries. The fock regime keeps amplitudes and temperatures low enough
// for the truncated oracle; both regimes keep every family identifiable
// (information bounded away from zero) so that relative comparisons stay
// meaningful.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  double uniform(double a, double b);
  StateParams state_params(bool fock_regime);
  ParamFamily family_point(Family kind, bool fock_regime);

private:
  std::mt19937_64 eng_;
};

}  // namespace qcrb
