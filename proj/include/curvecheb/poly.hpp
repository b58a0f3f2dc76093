#pragma once

#include <complex>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace curvecheb {

using cplx = std::complex<double>;

/// Exponent pair z1^a z2^b.
struct Monomial {
  int a = 0;
  int b = 0;

  int degree() const { return a + b; }
  bool divides(const Monomial& other) const { return a <= other.a && b <= other.b; }
  bool operator==(const Monomial&) const = default;
};

/// Graded order: total degree first, then the power of z2. This is the order
/// used both for printing and for normal-form reduction.
struct GradedLess {
  bool operator()(const Monomial& x, const Monomial& y) const {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return x.b < y.b;
  }
};

/// x^n for n >= 0 by repeated squaring.
inline cplx ipow(cplx x, int n) {
  cplx r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

/// Relative threshold below which coefficients are dropped after every ring
/// operation.
inline constexpr double kPruneRelative = 1e-13;

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

/// Sparse complex polynomial in (z1, z2).
class BivarPoly {
 public:
  using TermMap = std::map<Monomial, cplx, GradedLess>;

  BivarPoly() = default;

  static BivarPoly constant(cplx c);
  static BivarPoly monomial(int a, int b, cplx c = 1.0);
  static BivarPoly z1() { return monomial(1, 0); }
  static BivarPoly z2() { return monomial(0, 1); }

  /// Builds from raw terms; duplicate exponents are summed.
  static BivarPoly from_terms(const std::vector<std::pair<Monomial, cplx>>& terms);
  static BivarPoly from_map(TermMap terms);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  std::size_t size() const { return terms_.size(); }
  cplx coeff(int a, int b) const;
  double max_abs_coeff() const;
  bool is_homogeneous() const;

  cplx operator()(cplx z1, cplx z2) const;

  BivarPoly& operator+=(const BivarPoly& o);
  BivarPoly& operator-=(const BivarPoly& o);
  BivarPoly& operator*=(cplx s);
  BivarPoly pow(int n) const;

  /// Adds c * z1^a z2^b without pruning; call prune() afterwards.
  void add_term(const Monomial& m, cplx c);
  void prune();

  std::string to_string() const;

 private:
  TermMap terms_;
};

BivarPoly operator+(BivarPoly p, const BivarPoly& q);
BivarPoly operator-(BivarPoly p, const BivarPoly& q);
BivarPoly operator-(BivarPoly p);
BivarPoly operator*(BivarPoly p, cplx s);
BivarPoly operator*(cplx s, BivarPoly p);
BivarPoly multiply(const BivarPoly& p, const BivarPoly& q);
BivarPoly operator*(const BivarPoly& p, const BivarPoly& q);

/// Sum of the terms of top total degree. Throws on the zero polynomial.
BivarPoly leading_part(const BivarPoly& p);

/// Sum of the terms of total degree n (possibly zero).
BivarPoly homogeneous_part(const BivarPoly& p, int n);

/// max |p_ab - q_ab| over the union of supports.
double max_coeff_distance(const BivarPoly& p, const BivarPoly& q);

/// Roots of sum_i coeffs[i] x^i. Leading coefficients that are negligible
/// relative to the largest one are dropped first. Uses companion-matrix
/// eigenvalues followed by Newton polishing.
std::vector<cplx> polynomial_roots(std::vector<cplx> coeffs);

}  // namespace curvecheb
