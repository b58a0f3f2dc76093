#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "curvecheb/error.hpp"
#include "curvecheb/transfinite.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace curvecheb;
using namespace curvecheb::testing;

namespace {

// log |det [b_j(zeta_k)]| through a dense LU on the expanded basis polynomials.
double log_det_oracle(const Curve& C, BasisId id, const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  const auto basis = basis_enumerate(C, id, n);
  Eigen::MatrixXcd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = basis[j].poly(pts[i].z1, pts[i].z2);
  return std::log(std::abs(M.fullPivLu().determinant()));
}

}  // namespace

TEST_CASE("log_vdm examples") {
  const Curve C = Curve::create(curves::hyperbola());
  const Point a{cplx(1.0), cplx(0.0)}, b{cplx(0.0, 1.0), cplx(0.0, std::sqrt(2.0))};
  CHECK(log_vdm(C, BasisId::S, {a}) == 0.0);
  CHECK(log_vdm(C, BasisId::S, {a, b}) == doctest::Approx(std::log(std::abs(b.z1 - a.z1))));
  CHECK(log_vdm(C, BasisId::S, {a, a}) == kNegInf);
  CHECK_THROWS_AS(log_vdm(C, BasisId::S, {}), Error);
}

TEST_CASE("property: log_vdm matches a dense determinant and ignores point order") {
  Rng rng(21);
  for (unsigned long long seed = 1; seed <= 4; ++seed) {
    const Curve C = Curve::create(curves::random_curve(2 + static_cast<int>(seed % 2), seed));
    const auto pts = fiber_points(C, rng, 10);
    for (const auto id : {BasisId::S, BasisId::C}) {
      const double v = log_vdm(C, id, pts);
      CHECK(v == doctest::Approx(log_det_oracle(C, id, pts)).epsilon(1e-8));
      auto shuffled = pts;
      std::reverse(shuffled.begin(), shuffled.end());
      std::swap(shuffled[0], shuffled[3]);
      CHECK(log_vdm(C, id, shuffled) == doctest::Approx(v).epsilon(1e-10));
    }
  }
}

TEST_CASE("property: S and C determinants differ by a set-independent factor") {
  Rng rng(4);
  const Curve C = Curve::create(curves::random_curve(3, 7));
  double first = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto pts = fiber_points(C, rng, 15);
    const double diff = log_vdm(C, BasisId::C, pts) - log_vdm(C, BasisId::S, pts);
    if (trial == 0) first = diff;
    CHECK(diff == doctest::Approx(first).epsilon(1e-8));
  }
}

TEST_CASE("property: each Leja step maximizes |VDM| over the candidates") {
  const Curve C = Curve::create(curves::random_curve(3, 2));
  const auto K = sample(C, {Z1Disk{1.1}, 24});
  for (const auto id : {BasisId::S, BasisId::C}) {
    LejaRun run(C, K, id);
    run.extend(8);
    REQUIRE(run.size() == 8);
    for (std::size_t k = 0; k < run.size(); ++k) {
      std::vector<Point> prefix(run.points().begin(), run.points().begin() + k);
      CHECK(log_vdm(C, id, std::vector<Point>(run.points().begin(), run.points().begin() + k + 1)) ==
            doctest::Approx(run.log_vdm()[k]).epsilon(1e-9));
      for (const auto& cand : K.points()) {
        auto trial = prefix;
        trial.push_back(cand);
        CHECK(log_vdm(C, id, trial) <= run.log_vdm()[k] + 1e-9);
      }
    }
  }
}

TEST_CASE("Leja diameter estimates") {
  const Curve C = Curve::create(curves::hyperbola());
  const auto K = sample(C, {AbsV1V2Torus{0.5, 0.5}, 256});
  for (const auto id : {BasisId::S, BasisId::C}) {
    const auto res = transfinite_diameter(C, K, id, 12);
    const auto& est = res.run.diam_estimates();
    REQUIRE(est.size() == 12);
    for (const auto& e : est) {
      CHECK(e.count == basis_count_to_degree(C, e.degree));
      CHECK(e.degsum == basis_degree_sum(C, e.degree));
    }
    CHECK(res.raw == doctest::Approx(est.back().value));
    CHECK(res.estimate == doctest::Approx(0.5).epsilon(0.1));
  }
}

TEST_CASE("fitted_diameter recovers the intercept of an exact model") {
  std::vector<DiamEstimate> est;
  for (int n = 1; n <= 12; ++n) est.push_back({n, 0, 0, std::exp(std::log(0.7) + 0.9 * std::log(n) / n)});
  CHECK(fitted_diameter(est) == doctest::Approx(0.7).epsilon(1e-10));
  est.resize(2);
  CHECK(fitted_diameter(est) == est.back().value);
}

TEST_CASE("vn_tau bound holds on the torus and fails for halved tau") {
  const Curve C = Curve::create(curves::hyperbola());
  const auto K = sample(C, {AbsV1V2Torus{0.5, 0.5}, 256});
  LejaRun run(C, K, BasisId::C);
  run.extend_to_degree(6);
  const auto solves = tau_solves(C, K, BasisId::C, static_cast<int>(run.size()));
  std::vector<double> tau, halved;
  for (const auto& s : solves) {
    tau.push_back(s.norm);
    halved.push_back(0.5 * s.norm);
  }
  CHECK(vn_tau_check(run, tau).all_pass());
  CHECK_FALSE(vn_tau_check(run, halved).all_pass());
}

TEST_CASE("weighted_tau_mean") {
  CHECK(weighted_tau_mean({{1, 2.0}, {3, 0.5}}) == doctest::Approx(std::pow(0.25, 0.25)));
  CHECK(weighted_tau_mean({{2, 0.3}}) == doctest::Approx(0.3));
  CHECK_THROWS_AS(weighted_tau_mean({}), Error);
}
