#pragma once

#include <string>
#include <vector>

#include "curvecheb/chebyshev.hpp"
#include "curvecheb/curve.hpp"
#include "curvecheb/sets.hpp"

namespace curvecheb {

/// Point [a : b] at infinity of A together with the degree-(d-1) form that is
/// 1 there and vanishes at the other points. On curves with directions this
/// is [1 : lambda_k] and v_k. On relaxed curves whose leading form has
/// distinct linear factors it is built from those factors (z1 z2 - eps gives
/// [1 : 0] with z1 and [0 : 1] with z2).
struct RobinDirection {
  cplx a = 1.0;
  cplx b = 0.0;
  BivarPoly v;
  std::string label() const;
};

std::vector<RobinDirection> robin_directions(const Curve& curve);

/// (1/deg p) log |p^(a_k, b_k)| with p^ the top-degree part of the normal form
/// of p; -inf when it vanishes there or p is constant.
double robin_of_poly(const Curve& curve, const BivarPoly& p, int k);

struct RobinEntry {
  int k = 0;
  RobinDirection direction;
  ConstantEstimate estimate;  // T(K, M(v_k))
  double rho = 0.0;           // -log T
  std::string via = "directClass";
  /// Largest parameter solved, its tn, and robin_of_poly of t / |t|_K.
  int n = 0;
  double tn = 0.0;
  double rho_poly = 0.0;
  /// |rho_poly - (-log tn)| and |rho_poly - rho|.
  double poly_gap = 0.0;
  double estimate_gap = 0.0;
};

struct RobinReport {
  std::vector<RobinEntry> entries;
  /// Labels (1-based) sorted by ascending rho, i.e. descending T.
  std::vector<int> ordering;
  /// Sorted rho values increase by more than strict_tol at every step.
  bool strict = false;
  double strict_tol = 1e-2;
};

/// rho_K for every point at infinity, from MQ(v_k) up to total degree max_degree.
RobinReport robin_constants(const Curve& curve, const SampledSet& K, int max_degree, const SolverOptions& opts = {},
                            double strict_tol = 1e-2);

enum class ExtremalFamily { Vk, VkTilde };
std::string to_string(ExtremalFamily f);
ExtremalFamily extremal_family_from_string(const std::string& s);

/// Degree-n surrogate (1/n) log(|t| / |t|_K) of an extremal-like function.
/// Vk uses M_{z1^j}(v_k) with n = l(d-1) + j; VkTilde uses Z(k) with
/// z2^k z1^(n-k).
struct ExtremalApprox {
  ExtremalFamily family = ExtremalFamily::Vk;
  int k = 0;
  int n = 0;
  ChebSolve cheb;
  double normalizer = 0.0;
};

ExtremalApprox extremal_build(const Curve& curve, const SampledSet& K, ExtremalFamily family, int k, int n,
                              const SolverOptions& opts = {});

/// NaN marks a point off the curve; -inf a zero of t.
std::vector<double> extremal_eval(const Curve& curve, const ExtremalApprox& approx, const std::vector<Point>& pts);

/// Whether a closed form of V_K is known for this curve and set:
///  Z1Disk(r): log+ |z1| / r.
///  Z2Interval(lo, hi): log |h(z2')| with z2' the affine image of z2 in [-1, 1]
///    and h the inverse Joukowski map.
///  AbsV1V2Torus(r1, r2) when v1 v2 is a constant of modulus r1 r2:
///    max(log+ |v1| / r1, log+ |v2| / r2).
///  BidiskTrace(r1, r2) on relaxed z1 z2 - eps: max(log+ |z1| / r1, log+ |z2| / r2).
bool has_oracle(const Curve& curve, const SetDescriptor& desc);
std::vector<double> oracle_eval(const Curve& curve, const SetDescriptor& desc, const std::vector<Point>& pts);

/// Points of A above z1 = R e^(i theta) for each radius and `angles`
/// deterministic angles, every branch.
std::vector<Point> probe_grid(const Curve& curve, const std::vector<double>& radii, int angles);

struct VkMaxRow {
  Point z;
  double v_max = 0.0;       // NaN when the Vk family is unavailable
  double v_tilde_max = 0.0;
  double oracle = 0.0;      // NaN without an oracle
  double gap = 0.0;         // |v_max - oracle|
  double gap_tilde = 0.0;   // |v_tilde_max - oracle|
};

struct VkMaxReport {
  int n = 0;
  std::vector<VkMaxRow> rows;
  bool has_oracle = false;
  /// The VkTilde max formula assumes strictly increasing Robin constants.
  bool tilde_hypothesis = false;
  std::vector<ExtremalApprox> v;
  std::vector<ExtremalApprox> v_tilde;

  double max_gap() const;
  double max_gap_tilde() const;
};

VkMaxReport vk_max(const Curve& curve, const SampledSet& K, int n, const std::vector<Point>& pts,
                   const RobinReport& robin, const SolverOptions& opts = {});

/// Tab-separated grid: re z1, im z1, re z2, im z2, V_max, V_tilde_max, oracle, gap.
void write_vk_grid(std::ostream& out, const VkMaxReport& rep);

}  // namespace curvecheb
