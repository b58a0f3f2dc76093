#include <cmath>

#include "curvecheb/chebyshev.hpp"
#include "curvecheb/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace curvecheb;
using namespace curvecheb::testing;

namespace {

// Smallest enclosing circle radius by brute force over pair and triple circles.
double enclosing_radius(const std::vector<cplx>& z) {
  double best = 1e300;
  auto covers = [&](cplx c, double r) {
    for (const auto& p : z)
      if (std::abs(p - c) > r * (1 + 1e-12) + 1e-14) return false;
    return true;
  };
  const std::size_t n = z.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx c = 0.5 * (z[i] + z[j]);
      const double r = std::abs(z[i] - c);
      if (r < best && covers(c, r)) best = r;
      for (std::size_t k = j + 1; k < n; ++k) {
        const cplx a = z[j] - z[i], b = z[k] - z[i];
        const double den = 2.0 * (a.real() * b.imag() - a.imag() * b.real());
        if (std::abs(den) < 1e-14) continue;
        const double na = std::norm(a), nb = std::norm(b);
        const cplx cc = z[i] + cplx((b.imag() * na - a.imag() * nb) / den, (a.real() * nb - b.real() * na) / den);
        const double rr = std::abs(z[i] - cc);
        if (rr < best && covers(cc, rr)) best = rr;
      }
    }
  return best;
}

}  // namespace

TEST_CASE("Z(0) on the unit z1-disk of the hyperbola has norm 1") {
  const Curve C = Curve::create(curves::hyperbola());
  const auto K = sample(C, {Z1Disk{1.0}, 128});
  for (int n = 1; n <= 4; ++n) {
    const ChebSolve s = chebyshev_solve(C, ClassZk{0}, n, K);
    REQUIRE(s.ok());
    CHECK(s.converged);
    CHECK(s.norm == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.tn == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.lower_bound <= s.norm * (1 + 1e-12));
  }
}

TEST_CASE("M(v1) on the torus has tn = 1/2") {
  const Curve C = Curve::create(curves::hyperbola());
  const auto K = sample(C, {AbsV1V2Torus{0.5, 0.5}, 128});
  for (int n = 1; n <= 6; ++n) {
    const ChebSolve s = chebyshev_solve(C, ClassMQ{C.v(1)}, n, K);
    REQUIRE(s.ok());
    CHECK(s.total_degree() == n);
    CHECK(s.tn == doctest::Approx(0.5).epsilon(1e-6));
  }
  const auto est = estimate_class(C, ClassMQ{C.v(1)}, K, 8);
  CHECK(est.method == EstimateMethod::CappedFit);
  CHECK(est.estimate == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("capped fit removes the finite-n bias on the interval") {
  // T(K, lambda_k) = 1/2 for z2 in [-1, 1] on the hyperbola; tn decreases to it
  // like c^(1/n).
  const Curve C = Curve::create(curves::hyperbola());
  const auto K = sample(C, {Z2Interval{-1.0, 1.0}, 512});
  std::vector<ChebSolve> solves;
  const auto est = estimate_class(C, ClassMQ{C.v(1)}, K, 12, {}, &solves);
  CHECK(solves.back().tn > 0.54);
  CHECK(est.estimate <= solves.back().tn);
  CHECK(est.estimate == doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("a single point has norm 0") {
  const Curve C = Curve::create(curves::hyperbola());
  const auto K = sample(C, {PointCloud{{{cplx(1.0), cplx(0.0)}}}, 16});
  for (int n = 1; n <= 3; ++n) {
    const ChebSolve s = chebyshev_solve(C, ClassMQ{C.v(1)}, n, K);
    REQUIRE(s.ok());
    CHECK(s.converged);
    CHECK(s.norm < 1e-12);
    CHECK(std::abs(s.eval(C, 1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("property: M(z1) at n = 1 is the smallest enclosing circle of the z1 values") {
  Rng rng(8);
  const Curve C = Curve::create(curves::random_curve(3, 5));
  for (int trial = 0; trial < 10; ++trial) {
    auto pts = curve_points(C, rng, 4 + trial);
    std::vector<cplx> z1s;
    for (const auto& p : pts) z1s.push_back(p.z1);
    const auto K = sample(C, {PointCloud{pts}, 16});
    const ChebSolve s = chebyshev_solve(C, ClassMQ{BivarPoly::z1()}, 1, K);
    REQUIRE(s.ok());
    CHECK(s.norm == doctest::Approx(enclosing_radius(z1s)).epsilon(1e-7));
  }
}

TEST_CASE("property: perturbing the optimum never lowers the norm") {
  Rng rng(3);
  const Curve C = Curve::create(curves::random_curve(3, 7));
  const auto K = sample(C, {Z1Disk{1.2}, 128});
  for (const auto& spec : std::vector<ClassSpec>{ClassMQ{C.v(2)}, ClassZk{1}, ClassMz1jVk{1, 3}}) {
    const ChebSolve s = chebyshev_solve(C, spec, 3, K);
    REQUIRE(s.ok());
    CHECK((s.norm - s.lower_bound) <= 1e-6 * s.norm);
    for (int trial = 0; trial < 20; ++trial) {
      const double eps = std::pow(10.0, -rng.uniform(2, 6));
      BivarPoly q = s.minimizer;
      for (const auto& e : s.family.free) q += e.poly * cplx(eps * rng.uniform(-1, 1), eps * rng.uniform(-1, 1));
      CHECK(sup_norm(q, K) >= s.norm * (1 - 1e-7));
    }
  }
}

TEST_CASE("property: norms of a multiplicative class are submultiplicative") {
  const Curve C = Curve::create(curves::random_curve(3, 9));
  const auto K = sample(C, {Z1Disk{0.9}, 128});
  const ClassSpec spec = ClassMQ{C.v(1)};
  std::vector<double> norm(7);
  for (int n = 1; n <= 6; ++n) norm[n] = chebyshev_solve(C, spec, n, K).norm;
  for (int m = 1; m <= 3; ++m)
    for (int n = m; m + n <= 6; ++n) CHECK(norm[m + n] <= norm[m] * norm[n] * (1 + 1e-6));
}

TEST_CASE("property: minimal norms grow with the set") {
  Rng rng(12);
  const Curve C = Curve::create(curves::random_curve(2, 3));
  const auto big = sample(C, {Z1Disk{1.5}, 64});
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Point> subset;
    for (const auto& p : big.points())
      if (rng.uniform() < 0.5) subset.push_back(p);
    const auto small = sample(C, {PointCloud{subset}, 16});
    for (int n = 1; n <= 4; ++n) {
      const double a = chebyshev_solve(C, ClassMQ{C.v(1)}, n, small).norm;
      const double b = chebyshev_solve(C, ClassMQ{C.v(1)}, n, big).norm;
      CHECK(a <= b * (1 + 1e-7));
    }
  }
}

TEST_CASE("class degrees and parameters") {
  const Curve C = Curve::create(curves::random_curve(3, 7));
  CHECK(class_degree(C, ClassMQ{C.v(1)}, 4) == 8);
  CHECK(class_degree(C, ClassZk{2}, 5) == 7);
  CHECK(class_degree(C, ClassMz1jVk{1, 2}, 3) == 7);
  CHECK(class_degree(C, ClassMRQ{BivarPoly::z1(), C.v(1)}, 2) == 5);
  const auto ns = parameters_up_to_degree(C, ClassMQ{C.v(1)}, 9);
  CHECK(ns == std::vector<int>{1, 2, 3, 4});
  CHECK_THROWS_AS(chebyshev_solve(C, ClassMz1jVk{2, 1}, 1, sample(C, {Z1Disk{1.0}, 16})), Error);
}

TEST_CASE("assertions and labels") {
  CHECK(check_equal("x", 1.0, 1.05, 0.1).pass);
  CHECK_FALSE(check_equal("x", 1.0, 1.5, 0.1).pass);
  CHECK(check_le("x", 1.01, 1.0, 0.02).pass);
  CHECK_FALSE(check_le("x", 1.05, 1.0, 0.02).pass);
  CHECK(check_ge("x", 0.99, 1.0, 0.02).pass);
  CHECK_FALSE(check_ge("x", 0.9, 1.0, 0.02).pass);
  CHECK(descending_labels({0.3, 0.7, 0.5}, {1.0, 2.0, 3.0}) == std::vector<int>{2, 3, 1});
}

TEST_CASE("comparison report on the torus") {
  const Curve C = Curve::create(curves::hyperbola());
  const auto K = sample(C, {AbsV1V2Torus{0.5, 0.5}, 128});
  ComparisonOptions opts;
  opts.max_degree = 8;
  const auto rep = comparison_report(C, K, opts);
  CHECK(rep.all_pass());
  REQUIRE(rep.estimates.size() >= 2);
}
