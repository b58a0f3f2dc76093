#include <algorithm>
#include <cmath>

#include "curvecheb/basis.hpp"
#include "curvecheb/curve.hpp"
#include "curvecheb/error.hpp"
#include "curvecheb/rng.hpp"
#include "curvecheb/sets.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace curvecheb;
using namespace curvecheb::testing;

namespace {

// Standard monomials counted by brute force: z1^a z2^b with b < d and a + b <= n.
std::pair<int, long long> count_standard(int d, int n) {
  int count = 0;
  long long degsum = 0;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b < d && a + b <= n; ++b) {
      ++count;
      degsum += a + b;
    }
  return {count, degsum};
}

}  // namespace

TEST_CASE("hyperbola directions and v_k") {
  const Curve C = Curve::create(curves::hyperbola());
  CHECK(C.degree() == 2);
  REQUIRE(C.has_directions());
  CHECK(std::abs(C.direction(1) - cplx(-1.0)) < 1e-14);
  CHECK(std::abs(C.direction(2) - cplx(1.0)) < 1e-14);
  const BivarPoly v1 = BivarPoly::from_terms({{{1, 0}, 0.5}, {{0, 1}, -0.5}});
  const BivarPoly v2 = BivarPoly::from_terms({{{1, 0}, 0.5}, {{0, 1}, 0.5}});
  CHECK(max_coeff_distance(C.v(1), v1) < 1e-14);
  CHECK(max_coeff_distance(C.v(2), v2) < 1e-14);
}

TEST_CASE("rejected curves name the violated hypothesis") {
  CHECK_THROWS_AS(Curve::create(curves::a_eps(0.1)), Error);
  CHECK_THROWS_AS(Curve::create(BivarPoly::from_terms({{{2, 0}, 1.0}, {{0, 1}, -1.0}})), Error);
  // (z1 - z2)^2 - 1 has a double direction.
  const BivarPoly z1 = BivarPoly::z1(), z2 = BivarPoly::z2();
  CHECK_THROWS_AS(Curve::create((z1 - z2) * (z1 - z2) - BivarPoly::constant(1.0)), Error);
  CHECK_THROWS_AS(Curve::create(z1 + z2), Error);
  CHECK_THROWS_AS(Curve::create(BivarPoly()), Error);
  try {
    Curve::create(curves::a_eps(0.1));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("relaxed curves have no directions") {
  const Curve C = Curve::create(curves::a_eps(0.25), {.relaxed = true});
  CHECK(C.relaxed());
  CHECK_FALSE(C.has_directions());
  CHECK_THROWS_AS(C.require_directional("test"), Error);
  // z1^2 z2^3 = (z1 z2)^2 z2 reduces to eps^2 z2.
  const BivarPoly r = C.normal_form(BivarPoly::monomial(2, 3));
  CHECK(max_coeff_distance(r, BivarPoly::monomial(0, 1, 0.0625)) < 1e-15);
}

TEST_CASE("property: v_j(1, lambda_k) is the Kronecker delta") {
  for (unsigned long long seed = 1; seed <= 8; ++seed) {
    const int d = 2 + static_cast<int>(seed % 4);
    const Curve C = Curve::create(curves::random_curve(d, seed));
    REQUIRE(static_cast<int>(C.directions().size()) == d);
    for (int j = 1; j <= d; ++j) {
      CHECK(C.v(j).is_homogeneous());
      CHECK(C.v(j).degree() == d - 1);
      for (int k = 1; k <= d; ++k) {
        const double expected = j == k ? 1.0 : 0.0;
        CHECK(std::abs(C.v(j)(1.0, C.direction(k)) - expected) < 1e-9);
      }
    }
  }
}

TEST_CASE("property: normal form preserves values on the curve and is idempotent") {
  Rng rng(99);
  for (unsigned long long seed = 1; seed <= 6; ++seed) {
    const Curve C = Curve::create(curves::random_curve(2 + static_cast<int>(seed % 3), seed));
    const auto pts = curve_points(C, rng, 20);
    for (int trial = 0; trial < 5; ++trial) {
      const BivarPoly p = random_poly(rng, rng.integer(0, 7));
      const BivarPoly r = C.normal_form(p);
      for (const auto& [m, c] : r.terms()) CHECK(m.b < C.degree());
      CHECK(max_coeff_distance(C.normal_form(r), r) < 1e-12 * (1.0 + r.max_abs_coeff()));
      CHECK(C.normal_form(p * C.defining()).max_abs_coeff() < 1e-9 * (1.0 + p.max_abs_coeff()));
      for (const auto& z : pts) {
        const cplx a = p(z.z1, z.z2), b = r(z.z1, z.z2);
        CHECK(std::abs(a - b) < 1e-8 * (1.0 + std::abs(a)));
      }
    }
  }
}

TEST_CASE("m_n and l_n match a brute-force count") {
  for (int d = 2; d <= 5; ++d) {
    const Curve C = Curve::create(curves::random_curve(d, 100 + d));
    for (int n = 0; n <= 20; ++n) {
      const auto [count, degsum] = count_standard(d, n);
      CHECK(basis_count_to_degree(C, n) == count);
      CHECK(basis_degree_sum(C, n) == degsum);
    }
    for (int i = 1; i <= basis_count_to_degree(C, 10); ++i) {
      const int deg = basis_degree_of(C, i);
      CHECK(basis_count_to_degree(C, deg - 1) < i);
      CHECK(i <= basis_count_to_degree(C, deg));
    }
  }
}

TEST_CASE("basis S and C on the hyperbola") {
  const Curve C = Curve::create(curves::hyperbola());
  const auto S = basis_enumerate(C, BasisId::S, 7);
  const std::vector<std::string> s_labels{"1", "z1", "z2", "z1^2", "z1*z2", "z1^3", "z1^2*z2"};
  for (int i = 0; i < 7; ++i) CHECK(S[i].label() == s_labels[i]);
  const auto Cb = basis_enumerate(C, BasisId::C, 7);
  const std::vector<std::string> c_labels{"1", "v1", "v2", "v1^2", "v2^2", "v1^3", "v2^3"};
  for (int i = 0; i < 7; ++i) {
    CHECK(Cb[i].label() == c_labels[i]);
    CHECK(Cb[i].degree == basis_degree_of(C, i + 1));
  }
  CHECK_THROWS_AS(basis_enumerate(C, BasisId::S, 0), Error);
}

TEST_CASE("C basis on a cubic starts with the monomials of degree <= 1") {
  const Curve C = Curve::create(curves::random_curve(3, 7));
  const auto b = basis_enumerate(C, BasisId::C, 12);
  const std::vector<std::string> labels{"1", "z1", "z2", "v1", "v2", "v3", "z1*v1", "z1*v2", "z1*v3",
                                        "v1^2", "v2^2", "v3^2"};
  for (int i = 0; i < 12; ++i) CHECK(b[i].label() == labels[i]);
}

TEST_CASE("property: factored and expanded basis values agree on the curve") {
  Rng rng(5);
  const Curve C = Curve::create(curves::random_curve(3, 11));
  const auto pts = curve_points(C, rng, 6);
  for (const auto id : {BasisId::S, BasisId::C})
    for (const auto& e : basis_enumerate(C, id, basis_count_to_degree(C, 9)))
      for (const auto& z : pts) {
        const cplx a = e.eval(C, z.z1, z.z2), b = e.poly(z.z1, z.z2);
        CHECK(std::abs(a - b) < 1e-8 * (1.0 + std::abs(a)));
      }
}

TEST_CASE("property: expansion in S and C reconstructs the normal form") {
  Rng rng(31);
  for (unsigned long long seed = 1; seed <= 5; ++seed) {
    const Curve C = Curve::create(curves::random_curve(2 + static_cast<int>(seed % 3), seed));
    for (int trial = 0; trial < 4; ++trial) {
      const BivarPoly p = random_poly(rng, rng.integer(1, 12));
      const BivarPoly r = C.normal_form(p);
      for (const auto id : {BasisId::S, BasisId::C}) {
        const auto coeffs = expand_in_basis(C, p, id);
        CHECK(static_cast<int>(coeffs.size()) == basis_count_to_degree(C, r.degree()));
        const BivarPoly back = C.normal_form(reconstruct(C, coeffs, id));
        CHECK(max_coeff_distance(back, r) < 1e-8 * (1.0 + r.max_abs_coeff()));
      }
    }
  }
}

TEST_CASE("c_jk on the hyperbola") {
  const Curve C = Curve::create(curves::hyperbola());
  const auto t = cjk_table(C).entries;
  REQUIRE(t.size() == 2);
  // z2 = v2 - v1, z1 = v1 + v2.
  CHECK(std::abs(t[0][0] - cplx(-1.0)) < 1e-13);
  CHECK(std::abs(t[0][1] - cplx(1.0)) < 1e-13);
  CHECK(std::abs(t[1][0] - cplx(1.0)) < 1e-13);
  CHECK(std::abs(t[1][1] - cplx(1.0)) < 1e-13);
}

TEST_CASE("property: c_jk equals lambda_k^(d-1-j)") {
  // A form h of degree d-1 equals sum_k h(1, lambda_k) v_k.
  for (unsigned long long seed = 3; seed <= 7; ++seed) {
    const Curve C = Curve::create(curves::random_curve(3, seed));
    const auto t = cjk_table(C).entries;
    for (int j = 0; j < 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        const cplx expected = std::pow(C.direction(k), 2 - j);
        CHECK(std::abs(t[j][k - 1] - expected) < 1e-8 * (1.0 + std::abs(expected)));
      }
  }
}

TEST_CASE("property: the directional product rule drops degree") {
  Rng rng(17);
  for (unsigned long long seed = 1; seed <= 5; ++seed) {
    const int d = 2 + static_cast<int>(seed % 3);
    const Curve C = Curve::create(curves::random_curve(d, seed));
    for (int trial = 0; trial < 4; ++trial) {
      const BivarPoly q = C.normal_form(random_poly(rng, rng.integer(1, 6)));
      for (int k = 1; k <= d; ++k) {
        const BivarPoly r = polyprop_residual(C, q, k);
        if (!r.is_zero()) CHECK(r.degree() < q.degree() + d - 1);
        // Products v_j v_k (j != k) drop degree as well.
        const int other = k % d + 1;
        const BivarPoly vv = C.normal_form(C.v(k) * C.v(other));
        if (!vv.is_zero()) CHECK(vv.degree() < 2 * (d - 1));
      }
    }
  }
}
