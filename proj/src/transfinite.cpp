#include "curvecheb/transfinite.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "curvecheb/error.hpp"

namespace curvecheb {

double log_vdm(const Curve& curve, BasisId basis, const std::vector<Point>& pts) {
  if (pts.empty()) invalid("log_vdm needs at least one point");
  const auto n = static_cast<Eigen::Index>(pts.size());
  const auto elems = basis_enumerate(curve, basis, static_cast<int>(n));
  Eigen::MatrixXcd V(n, n);
  double logscale = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) V(i, j) = elems[j].eval(curve, pts[i].z1, pts[i].z2);
    const double s = V.col(j).cwiseAbs().maxCoeff();
    if (!(s > 0) || !std::isfinite(s)) return kNegInf;
    V.col(j) /= s;
    logscale += std::log(s);
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(V);
  lu.setThreshold(1e-13);
  if (lu.rank() < n) return kNegInf;
  double sum = logscale;
  for (Eigen::Index i = 0; i < n; ++i) sum += std::log(std::abs(lu.matrixLU()(i, i)));
  return sum;
}

LejaRun::LejaRun(const Curve& curve, const SampledSet& K, BasisId basis)
    : curve_(&curve), K_(&K), basis_(basis), used_(K.size(), false) {
  if (basis == BasisId::C) curve.require_directional("basis C");
}

void LejaRun::extend(int count) {
  if (count < 0) invalid("count must be nonnegative");
  const auto& cand = K_->points();
  const std::size_t N = cand.size();
  if (points_.size() + static_cast<std::size_t>(count) > N)
    invalid("candidate set has fewer than " + std::to_string(count) + " unused points");
  for (int step = 0; step < count; ++step) {
    const int j = static_cast<int>(points_.size()) + 1;
    const BasisElement b = basis_element(*curve_, basis_, j);
    std::vector<cplx> col(N);
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      col[i] = b.eval(*curve_, cand[i].z1, cand[i].z2);
      s = std::max(s, std::abs(col[i]));
    }
    if (!(s > 0) || !std::isfinite(s)) numerical("degenerate candidate set");
    for (auto& v : col) v /= s;
    for (std::size_t t = 0; t < multipliers_.size(); ++t) {
      const cplx f = col[indices_[t]];
      if (f == cplx(0.0)) continue;
      const auto& m = multipliers_[t];
      for (std::size_t i = 0; i < N; ++i) col[i] -= m[i] * f;
    }
    std::size_t best = N;
    double bestabs = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      if (!used_[i] && std::abs(col[i]) > bestabs) {
        bestabs = std::abs(col[i]);
        best = i;
      }
    if (best == N || bestabs <= 1e-13) numerical("degenerate candidate set");
    const cplx pivot = col[best];
    for (std::size_t i = 0; i < N; ++i) col[i] = used_[i] ? cplx(0.0) : col[i] / pivot;
    multipliers_.push_back(std::move(col));
    used_[best] = true;
    indices_.push_back(best);
    points_.push_back(cand[best]);
    const double prev = log_vdm_.empty() ? 0.0 : log_vdm_.back();
    log_vdm_.push_back(prev + std::log(bestabs) + std::log(s));

    // Completed degree block: the next element has a larger degree.
    const int deg = b.degree;
    if (deg > 0 && basis_count_to_degree(*curve_, deg) == j) {
      const long long l = basis_degree_sum(*curve_, deg);
      diam_.push_back({deg, j, l, std::exp(log_vdm_.back() / static_cast<double>(l))});
    }
  }
}

void LejaRun::extend_to_degree(int max_degree) {
  if (max_degree < 1) invalid("degree must be >= 1");
  const int target = basis_count_to_degree(*curve_, max_degree);
  if (target > static_cast<int>(size())) extend(target - static_cast<int>(size()));
}

double fitted_diameter(const std::vector<DiamEstimate>& estimates) {
  if (estimates.empty()) invalid("no completed degree blocks");
  const std::size_t count = estimates.size();
  if (count < 3) return estimates.back().value;
  const std::size_t tail = std::max<std::size_t>(3, (count + 1) / 2);
  Eigen::MatrixXd X(static_cast<Eigen::Index>(tail), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(tail));
  for (std::size_t i = 0; i < tail; ++i) {
    const auto& e = estimates[count - tail + i];
    const auto r = static_cast<Eigen::Index>(i);
    X(r, 0) = 1.0;
    X(r, 1) = std::log(static_cast<double>(e.degree)) / e.degree;
    y(r) = std::log(e.value);
  }
  const Eigen::Vector2d c = X.colPivHouseholderQr().solve(y);
  const double v = std::exp(c(0));
  return std::isfinite(v) ? v : estimates.back().value;
}

TransfiniteResult transfinite_diameter(const Curve& curve, const SampledSet& K, BasisId basis, int max_degree) {
  TransfiniteResult out{0.0, 0.0, LejaRun(curve, K, basis)};
  out.run.extend_to_degree(max_degree);
  out.raw = out.run.diam_estimates().back().value;
  out.estimate = fitted_diameter(out.run.diam_estimates());
  return out;
}

bool VnTauReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const VnTauEntry& e) { return e.pass; });
}

VnTauReport vn_tau_check(const LejaRun& run, const std::vector<double>& tau_norms, double slack) {
  VnTauReport rep;
  const std::size_t count = std::min(run.size(), tau_norms.size());
  const auto& lv = run.log_vdm();
  for (std::size_t k = 0; k < count; ++k) {
    VnTauEntry e;
    e.index = static_cast<int>(k) + 1;
    e.degree = basis_degree_of(run.curve(), e.index);
    e.log_ratio = lv[k] - (k == 0 ? 0.0 : lv[k - 1]);
    e.log_bound = std::log(static_cast<double>(e.index)) + std::log(tau_norms[k]) + std::log1p(slack);
    e.pass = e.log_ratio <= e.log_bound;
    rep.entries.push_back(e);
  }
  return rep;
}

std::vector<ChebSolve> tau_solves(const Curve& curve, const SampledSet& K, BasisId basis, int count,
                                  const SolverOptions& opts) {
  if (count < 1) invalid("count must be >= 1");
  std::vector<int> ns(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) ns[static_cast<std::size_t>(i)] = i + 1;
  return chebyshev_sequence(curve, ClassBasisPrefix{basis}, K, ns, opts);
}

double weighted_tau_mean(const std::vector<std::pair<int, double>>& tau) {
  if (tau.empty()) invalid("weighted_tau_mean needs at least one value");
  double num = 0.0, den = 0.0;
  for (const auto& [nu, t] : tau) {
    if (nu < 1) invalid("weights must be >= 1");
    num += nu * (t > 0 ? std::log(t) : kNegInf);
    den += nu;
  }
  return std::exp(num / den);
}

}  // namespace curvecheb
