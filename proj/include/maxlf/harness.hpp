#pragma once

#include "maxlf/asymptotics.hpp"

#include <string>
#include <vector>

namespace maxlf {

struct SweepConfig {
  int J = 3;
  double s = 0.0;             // 0: pick J + 1 automatically
  double t = 0.0;             // 0: pick min{N/2 - J - 2, -1/2} - 1/2 automatically
  int n_magnitudes = 12;
  double mag_lo = 1e-3, mag_hi = 1e-1;
  std::vector<double> phases_deg{90.0, 60.0};
  int fit_window = 8;         // smallest magnitudes entering the fit
  std::string rhs_family = "generic";
  int sigma_max = 1;
  std::string precision = "dd";  // "double" or "dd"
  double omega_hat = 0.5;
  double slope_tol = 0.1;
  bool with_control = true;   // also evaluate the non-corrected remainder
  std::string out_dir;
};

struct SweepPoint {
  double mag = 0, phase_deg = 0;
  std::complex<double> omega;
  double corrected = 0, control = 0;
};

struct FitResult {
  double slope = 0, intercept = 0, residual = 0;
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepPoint> points;
  FitResult corrected_fit, control_fit;
  std::vector<FitResult> per_phase;  // corrected fit per phase ray
  bool pass = false;
  std::string git_hash = "unknown";
};

// Ordinary least squares of log-norm against log-magnitude.
FitResult fit_slope(const std::vector<std::pair<double, double>>& pts);

SweepReport run_sweep(const SweepConfig& config);

// Deterministic CSV / JSON / SVG outputs; returns the list of files written.
std::vector<std::string> emit_report(const SweepReport& report, const std::string& out_dir);

// Constructed right-hand sides for sweeps and tests (exact piecewise
// polynomial bumps with kernel-type, regular and tower-pairing content).
ExactPair constructed_rhs(const std::string& family, int sigma_max,
                          const Rational& start = Rational(1, 2));

// Exact polynomial bump c (r-u)^3 (v-r)^3 on [u, v], zero elsewhere.
ExactProfile bump_profile(const Rational& start, const Rational& u, const Rational& v,
                          const Rational& scale = Rational(1));

// ------------------------------------------------------------- acceptance

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Run one acceptance criterion (1..11). quick = reduced grids where allowed.
CriterionResult run_criterion(int id, bool quick = false);
std::vector<int> all_criteria();

}  // namespace maxlf
