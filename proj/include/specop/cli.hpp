#pragma once

// Command-line surface: spectrum, verify, sweep, inner, dirichlet.
// Exit codes: 0 success, 1 usage, 2 verification failure, 3 degenerate parameters.

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "specop/point_spectrum.hpp"
#include "specop/weights.hpp"

namespace specop::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kVerificationFailed = 2, kDegenerate = 3 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SpaceSpec {
  std::string family;  ///< "bergman" or "dirichlet-pow"
  double alpha = 0.0;
  WeightSequence weight() const;
  std::string text() const;
};

/// "bergman:ALPHA" or "dirichlet-pow:ALPHA".
SpaceSpec parse_space(std::string_view text);

/// "RE", "RE+IMi", "RE-IMi", "IMi", or "MOD@PHASE" (phase in radians).
std::complex<double> parse_complex(std::string_view text);

/// Comma-separated complex literals.
std::vector<std::complex<double>> parse_complex_list(std::string_view text);

std::vector<double> parse_real_list(std::string_view text);

struct SpectrumOptions {
  SpaceSpec space{"bergman", -1.0};
  std::complex<double> a{0.5, 0.0};
  int n = 500;
  int jmax = 5;
  double tol = 1e-8;
  double margin = 1e-6;
  bool outliers_only = false;
};

struct SectionSummary {
  int dimension = 0;
  std::vector<double> eigenvalues;  ///< empty when outliers_only
  std::vector<double> below;
  std::vector<double> above;
  double achieved_tol = 0.0;
  bool converged = false;
};

struct MatchRow {
  int j = 0;
  Branch branch = Branch::minus;
  double predicted = 0.0;
  double section = 0.0;
  double delta = 0.0;
  double residual = 0.0;
};

struct SpectralReport {
  SpectrumOptions options;
  std::string run_id;
  double a_mod = 0.0;
  double a_phase = 0.0;
  std::pair<double, double> essential{0.0, 0.0};
  std::vector<PointEigen> predicted;
  SectionSummary section;
  std::vector<MatchRow> matches;
  std::vector<std::string> notes;
  std::vector<std::string> failures;
  bool success = false;
};

SpectralReport build_spectrum_report(const SpectrumOptions& opts);

nlohmann::json to_json(const SpectralReport& report);
void write_csv(const SpectralReport& report, std::ostream& os, bool header = true);

/// Re-create the options embedded in a JSON report.
SpectrumOptions options_from_json(const nlohmann::json& report);

struct SweepRow {
  double a = 0.0;
  int minus_valid = 0;
  int plus_valid = 0;
  int outliers_below = 0;
  int outliers_above = 0;
};

/// One row per a value; rows are computed in parallel (SPECOP_THREADS caps the
/// worker count) and returned in input order.
std::vector<SweepRow> run_sweep(const SpaceSpec& space, double a_min, double a_max, int steps, int n, int jmax,
                                double margin);

struct VerifyOptions {
  std::vector<double> alphas{-2.0, -1.0, -0.5, 0.25, 0.5, 0.75};
  std::vector<double> a_values{0.3, 0.9, 1.1, 2.0};
  int jmax = 3;
  int n = 500;
  int terms = 50;
  double coeff_tol = 1e-10;
  double residual_tol = 1e-8;
  double perturb = 0.0;
};

struct VerifyFailure {
  double alpha = 0.0;
  double a = 0.0;
  int j = 0;
  Branch branch = Branch::minus;
  std::string check;
  double value = 0.0;
  double threshold = 0.0;
};

struct VerifyResult {
  int cases = 0;
  double worst_coeff_dev = 0.0;
  double worst_residual = 0.0;
  std::vector<VerifyFailure> failures;
  /// Eigenvalues outside the interval of eigenvalue_bounds. Reported, not
  /// failed: for non-decreasing weights the upper end (a+1)^2 + (C0-1)a is
  /// exceeded by lambda_0^+ at small |a| (the section confirms the eigenvalue).
  std::vector<VerifyFailure> bound_violations;
};

VerifyResult run_verify(const VerifyOptions& opts);

/// Largest |x_n - y_n| / |y_n| over the common prefix.
double max_relative_deviation(const CoeffSeq& x, const CoeffSeq& y);

/// ||T h - lambda h|| / ||h|| over rows 0 .. N-2 of the N-section, h in orthonormal coordinates.
double section_residual(const SymTridiag& t, const CoeffSeq& h_orthonormal, double lambda);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specop::cli
