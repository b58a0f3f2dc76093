#include <cmath>

#include "curvecheb/curve.hpp"
#include "curvecheb/error.hpp"
#include "curvecheb/poly.hpp"
#include "curvecheb/rng.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace curvecheb;
using namespace curvecheb::testing;

namespace {

cplx random_cplx(Rng& rng) { return {rng.uniform(-2, 2), rng.uniform(-2, 2)}; }

// sum c z1^a z2^b through std::pow.
cplx eval_direct(const BivarPoly& p, cplx z1, cplx z2) {
  cplx s = 0.0;
  for (const auto& [m, c] : p.terms()) s += c * std::pow(z1, m.a) * std::pow(z2, m.b);
  return s;
}

}  // namespace

TEST_CASE("difference of squares") {
  const BivarPoly z1 = BivarPoly::z1(), z2 = BivarPoly::z2();
  const BivarPoly p = (z1 + z2) * (z1 - z2);
  CHECK(p.size() == 2);
  CHECK(p.coeff(2, 0) == cplx(1.0));
  CHECK(p.coeff(0, 2) == cplx(-1.0));
  CHECK(p.coeff(1, 1) == cplx(0.0));
  CHECK(p.degree() == 2);
}

TEST_CASE("multiplying by one is the identity") {
  Rng rng(11);
  const BivarPoly p = random_poly(rng, 4);
  CHECK(max_coeff_distance(p * BivarPoly::constant(1.0), p) == 0.0);
}

TEST_CASE("v1 v2 on the hyperbola before reduction") {
  const Curve C = Curve::create(curves::hyperbola());
  const BivarPoly prod = C.v(1) * C.v(2);
  const BivarPoly expected = BivarPoly::from_terms({{{2, 0}, 0.25}, {{0, 2}, -0.25}});
  CHECK(max_coeff_distance(prod, expected) < 1e-15);
}

TEST_CASE("zero polynomial") {
  const BivarPoly z;
  CHECK(z.is_zero());
  CHECK(z.degree() == kZeroDegree);
  CHECK_THROWS_AS(leading_part(z), Error);
}

TEST_CASE("leading part") {
  CHECK(max_coeff_distance(leading_part(curves::hyperbola()),
                           BivarPoly::from_terms({{{2, 0}, 1.0}, {{0, 2}, -1.0}})) == 0.0);
  CHECK(max_coeff_distance(leading_part(BivarPoly::z1()), BivarPoly::z1()) == 0.0);
  const BivarPoly p = BivarPoly::from_terms({{{0, 3}, 1.0}, {{1, 1}, 1.0}, {{0, 0}, 5.0}});
  CHECK(max_coeff_distance(leading_part(p), BivarPoly::monomial(0, 3)) == 0.0);
}

TEST_CASE("prune drops tiny coefficients") {
  BivarPoly p = BivarPoly::from_terms({{{1, 0}, 1.0}, {{0, 1}, 1e-15}});
  CHECK(p.size() == 1);
}

TEST_CASE("property: evaluation, multiplication and powers agree with direct evaluation") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const BivarPoly p = random_poly(rng, rng.integer(0, 5));
    const BivarPoly q = random_poly(rng, rng.integer(0, 5));
    const cplx z1 = random_cplx(rng), z2 = random_cplx(rng);
    const cplx pv = eval_direct(p, z1, z2), qv = eval_direct(q, z1, z2);
    const double scale = 1.0 + std::abs(pv) * std::abs(qv);
    CHECK(std::abs(p(z1, z2) - pv) < 1e-12 * (1.0 + std::abs(pv)));
    CHECK(std::abs((p * q)(z1, z2) - pv * qv) < 1e-11 * scale);
    CHECK(std::abs((p + q)(z1, z2) - (pv + qv)) < 1e-12 * (1.0 + std::abs(pv) + std::abs(qv)));
    if (!p.is_zero() && !q.is_zero()) CHECK((p * q).degree() == p.degree() + q.degree());
    CHECK(std::abs(p.pow(3)(z1, z2) - pv * pv * pv) < 1e-10 * (1.0 + std::pow(std::abs(pv), 3)));
  }
}

TEST_CASE("polynomial roots") {
  // (x - 1)(x + 2)(x - i) = x^3 + (1 - i) x^2 + (-2 - i) x + 2i
  const auto r = polynomial_roots({cplx(0, 2), cplx(-2, -1), cplx(1, -1), 1.0});
  REQUIRE(r.size() == 3);
  for (cplx expected : {cplx(1, 0), cplx(-2, 0), cplx(0, 1)}) {
    double best = 1e9;
    for (const auto& x : r) best = std::min(best, std::abs(x - expected));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("property: polynomial roots annihilate the polynomial") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.integer(1, 8);
    std::vector<cplx> c(n + 1);
    for (auto& x : c) x = random_cplx(rng);
    const auto roots = polynomial_roots(c);
    CHECK(static_cast<int>(roots.size()) == n);
    for (const auto& x : roots) {
      cplx v = 0.0;
      for (int i = n; i >= 0; --i) v = v * x + c[i];
      double mag = 0.0;
      for (int i = 0; i <= n; ++i) mag += std::abs(c[i]) * std::pow(std::abs(x), i);
      CHECK(std::abs(v) < 1e-10 * mag);
    }
  }
}
