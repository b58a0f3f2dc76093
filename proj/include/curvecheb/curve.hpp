#pragma once

#include <string>
#include <vector>

#include "curvecheb/poly.hpp"

namespace curvecheb {

struct CurveOptions {
  /// Accept curves with horizontal or axis-parallel asymptotes. Only the
  /// monomial basis machinery is available on such curves.
  bool relaxed = false;
  /// Minimum separation of the directions, relative to max |lambda|.
  double separation_tol = 1e-8;
};

/// Algebraic curve A = {P = 0} in C^2 together with its asymptotic
/// directions lambda_k and directional basis polynomials v_k.
///
/// Directions are kept sorted by (Re, Im) unless relabeled through
/// with_ordering(). All indices k of directions are 1-based.
class Curve {
 public:
  /// Validates P and computes directions. Throws Error(InvalidInput) naming the
  /// violated hypothesis.
  static Curve create(const BivarPoly& P, const CurveOptions& opts = {});

  const BivarPoly& defining() const { return P_; }
  int degree() const { return d_; }
  /// Coefficient of z2^d.
  cplx lead_coeff() const { return lead_; }
  bool relaxed() const { return relaxed_; }
  bool has_directions() const { return !directions_.empty(); }

  const std::vector<cplx>& directions() const { return directions_; }
  const std::vector<BivarPoly>& dirbasis() const { return dirbasis_; }
  cplx direction(int k) const;
  const BivarPoly& v(int k) const;
  /// dir_ordering()[i] is the canonical (sorted) index of the direction now
  /// labelled i+1.
  const std::vector<int>& dir_ordering() const { return ordering_; }

  /// Copy with directions relabelled: new label i+1 takes the direction
  /// currently labelled perm[i] (1-based entries).
  Curve with_ordering(const std::vector<int>& perm) const;

  /// Leading monomial of P in the graded order; reduction eliminates its
  /// multiples. Equals z2^d on non-relaxed curves.
  Monomial reduction_monomial() const { return lm_; }

  /// Unique representative of p modulo P with no monomial divisible by the
  /// reduction monomial.
  BivarPoly normal_form(const BivarPoly& p) const;
  /// Degree of p as an element of the coordinate ring.
  int ring_degree(const BivarPoly& p) const { return normal_form(p).degree(); }

  /// Throws unless the directional machinery is usable on this curve.
  void require_directional(const std::string& what) const;

  std::string describe() const;

 private:
  Curve() = default;

  BivarPoly P_;
  int d_ = 0;
  cplx lead_ = 0.0;
  bool relaxed_ = false;
  Monomial lm_;
  std::vector<cplx> directions_;
  std::vector<BivarPoly> dirbasis_;
  std::vector<int> ordering_;
};

/// A few curves used throughout the examples and tests.
namespace curves {
/// z1^2 - z2^2 - 1.
BivarPoly hyperbola();
/// z1 z2 - eps.
BivarPoly a_eps(double eps);
/// Random curve of degree d with separated nonzero directions, built from
/// the given seed. Deterministic across platforms.
BivarPoly random_curve(int d, unsigned long long seed);
}  // namespace curves

}  // namespace curvecheb
