#pragma once

#include <cmath>
#include <vector>

#include "curvecheb/curve.hpp"
#include "curvecheb/poly.hpp"
#include "curvecheb/rng.hpp"
#include "curvecheb/sets.hpp"

namespace curvecheb::testing {

/// Dense polynomial of the given degree with coefficients in the unit square.
inline BivarPoly random_poly(Rng& rng, int degree) {
  BivarPoly p;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) p.add_term({a, b}, cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
  p.prune();
  return p;
}

/// At least count points of A above random z1 in [-1.5, 1.5]^2.
inline std::vector<Point> curve_points(const Curve& C, Rng& rng, int count) {
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < count) {
    const cplx z1(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
    std::vector<cplx> coeffs(C.degree() + 1, 0.0);
    for (const auto& [m, c] : C.defining().terms()) coeffs[m.b] += c * std::pow(z1, m.a);
    for (const auto& z2 : polynomial_roots(coeffs)) out.push_back({z1, z2});
  }
  return out;
}

/// count points of A with pairwise distinct random z1, one root per fiber.
inline std::vector<Point> fiber_points(const Curve& C, Rng& rng, int count) {
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < count) {
    const auto fiber = curve_points(C, rng, 1);
    out.push_back(fiber[rng.integer(0, static_cast<int>(fiber.size()) - 1)]);
  }
  return out;
}

}  // namespace curvecheb::testing
