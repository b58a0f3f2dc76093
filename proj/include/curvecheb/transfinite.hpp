#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "curvecheb/basis.hpp"
#include "curvecheb/chebyshev.hpp"
#include "curvecheb/curve.hpp"
#include "curvecheb/sets.hpp"

namespace curvecheb {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log |det [b_j(zeta_k)]| for the first pts.size() basis elements, by LU
/// with partial pivoting; kNegInf when the matrix is singular.
double log_vdm(const Curve& curve, BasisId basis, const std::vector<Point>& pts);

struct DiamEstimate {
  int degree = 0;        // completed degree block n
  int count = 0;         // m_n
  long long degsum = 0;  // l_n
  double value = 0.0;    // V_{m_n}^(1/l_n)
};

/// Greedy (Leja) selection from the samples of K. Each step picks the
/// candidate that maximizes |VDM| given the earlier picks, which is LU with
/// partial pivoting over the candidate rows. The curve and K must outlive
/// the run.
class LejaRun {
 public:
  LejaRun(const Curve& curve, const SampledSet& K, BasisId basis);

  const Curve& curve() const { return *curve_; }
  BasisId basis() const { return basis_; }
  const std::vector<Point>& points() const { return points_; }
  /// Candidate indices of the selected points.
  const std::vector<std::size_t>& indices() const { return indices_; }
  /// log |VDM| after each selection.
  const std::vector<double>& log_vdm() const { return log_vdm_; }
  const std::vector<DiamEstimate>& diam_estimates() const { return diam_; }
  std::size_t size() const { return points_.size(); }

  /// Appends count points. Throws Numerical when no candidate keeps the
  /// determinant nonzero.
  void extend(int count);
  /// Extends through the last element of degree max_degree.
  void extend_to_degree(int max_degree);

 private:
  const Curve* curve_;
  const SampledSet* K_;
  BasisId basis_;
  std::vector<Point> points_;
  std::vector<std::size_t> indices_;
  std::vector<double> log_vdm_;
  std::vector<DiamEstimate> diam_;
  // Elimination state: multiplier columns (over all candidates) and pivots.
  std::vector<std::vector<cplx>> multipliers_;
  std::vector<bool> used_;
};

/// Raw V^(1/l_n) decays like log d + b log(n)/n. Fits log value = a + b log(n)/n
/// over the last half of the completed blocks (at least 3) and returns exp(a).
/// With fewer than 3 blocks it returns the last raw value.
double fitted_diameter(const std::vector<DiamEstimate>& estimates);

struct TransfiniteResult {
  double estimate = 0.0;  // fitted_diameter of the run
  double raw = 0.0;       // V_{m_n}^(1/l_n) at the last degree
  LejaRun run;
};

TransfiniteResult transfinite_diameter(const Curve& curve, const SampledSet& K, BasisId basis, int max_degree);

struct VnTauEntry {
  int index = 0;          // n
  int degree = 0;         // deg b_n
  double log_ratio = 0;   // log(V_n / V_{n-1}) from the run
  double log_bound = 0;   // log(n tau_n^deg b_n (1 + slack))
  bool pass = false;
};

struct VnTauReport {
  std::vector<VnTauEntry> entries;
  bool all_pass() const;
};

/// Checks V_n / V_{n-1} <= n tau_n^{deg b_n} (1 + slack) for n = 1..min(run
/// size, tau size). tau_norms[n-1] = tau_n^{deg b_n}, the minimal norm of
/// b_n + earlier elements.
VnTauReport vn_tau_check(const LejaRun& run, const std::vector<double>& tau_norms, double slack = 0.05);

/// Minimal norms tau_n^{deg b_n} for n = 1..count.
std::vector<ChebSolve> tau_solves(const Curve& curve, const SampledSet& K, BasisId basis, int count,
                                  const SolverOptions& opts = {});

/// (prod tau^nu)^(1 / sum nu) for pairs (nu, tau).
double weighted_tau_mean(const std::vector<std::pair<int, double>>& tau);

}  // namespace curvecheb
