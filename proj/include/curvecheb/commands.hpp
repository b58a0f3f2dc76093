#pragma once

#include <string>
#include <vector>

#include "curvecheb/chebyshev.hpp"
#include "curvecheb/config.hpp"

namespace curvecheb {

enum ExitCode : int {
  kExitPass = 0,
  kExitAssertion = 1,
  kExitInvalid = 2,
  kExitUnconverged = 3,
};

/// Text printed to stdout plus files written under the output directory.
struct CommandResult {
  int exit_code = kExitPass;
  std::string report;
  std::vector<std::string> files;
};

/// Builds the curve of a config. Throws Error(InvalidInput) naming the violated
/// hypothesis.
Curve config_curve(const RunConfig& cfg);

CommandResult cmd_curve_info(const RunConfig& cfg);
/// Writes samples.txt in the point cloud format.
CommandResult cmd_sample(const RunConfig& cfg);
/// Table n, degree, norm, tn, lower_bound, iterations, converged, ridge over
/// n_lo..n_hi. Exit 3 on an unconverged solve unless allow_unconverged.
CommandResult cmd_cheb(const RunConfig& cfg, const std::string& class_spec, int n_lo, int n_hi,
                       bool allow_unconverged);
CommandResult cmd_robin(const RunConfig& cfg);
/// Leja runs for S (and C when available) through n_max.
CommandResult cmd_tfd(const RunConfig& cfg);
/// The configured family and k at degree n_max, plus the max-formula grid on
/// the probe points.
CommandResult cmd_extremal(const RunConfig& cfg);

struct VerifyTolerances {
  double equality = 0.10;
  double inequality = 0.02;
  double diameter_agreement = 0.10;
  double product_formula = 0.15;
  double vn_tau = 0.05;
  double robin = 5e-2;
  double extremal = 5e-2;
  double vanishing = 1e-6;

  /// Every field set to value.
  static VerifyTolerances uniform(double value);
};

struct VerifyResult {
  std::vector<Assertion> assertions;
  std::vector<std::string> notes;
  bool all_pass() const;
};

VerifyResult verify_suite(const Curve& curve, const SampledSet& K, const RunConfig& cfg, const VerifyTolerances& tol);
/// Runs verify_suite, writes verify.txt and exits 0 or 1.
CommandResult cmd_verify(const RunConfig& cfg);

/// Probe radii used by extremal and verify.
std::vector<double> default_probe_radii();

/// One line per assertion: PASS|FAIL, name, lhs, relation, rhs, tolerance.
std::string format_assertion(const Assertion& a);

}  // namespace curvecheb
