#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curvecheb/basis.hpp"
#include "curvecheb/curve.hpp"
#include "curvecheb/poly.hpp"
#include "curvecheb/sets.hpp"

namespace curvecheb {

// Monic classes. The integer n passed alongside a class is its growth
// parameter: the power of Q, the power of z1 (Zk), the power of v (Mz1jVk,
// TildeMl) or the basis index (BasisPrefix).

/// Q^n + lower degree terms.
struct ClassMQ {
  BivarPoly Q;
};
/// R Q^n + lower degree terms.
struct ClassMRQ {
  BivarPoly R;
  BivarPoly Q;
};
/// z2^k z1^n + earlier monomials of S.
struct ClassZk {
  int k = 0;
};
/// z1^j v_k^n + lower degree terms, 0 <= j <= d-2.
struct ClassMz1jVk {
  int j = 0;
  int k = 1;
};
/// z1^l v_j^n + earlier elements of C.
struct ClassTildeMl {
  int l = 0;
  int j = 1;
};
/// b_n + earlier elements of the basis; its minimal norms give tau_n.
struct ClassBasisPrefix {
  BasisId basis = BasisId::S;
};

using ClassSpec = std::variant<ClassMQ, ClassMRQ, ClassZk, ClassMz1jVk, ClassTildeMl, ClassBasisPrefix>;

enum class LotMode { Full, BasisS, BasisC };

LotMode lot_mode(const ClassSpec& spec);
std::string describe(const ClassSpec& spec);
/// Classes closed under multiplication of their members (M(Q)); their
/// constants are infima over n.
bool is_multiplicative(const ClassSpec& spec);

/// Product of powers of polynomials, evaluated factor by factor so that high
/// powers are never expanded.
struct FactoredPoly {
  std::vector<std::pair<BivarPoly, int>> factors;
  cplx scale = 1.0;

  cplx operator()(cplx z1, cplx z2) const;
  BivarPoly expand(const Curve& curve) const;
};

/// The affine family leading + span(free) realizing a class at one n.
struct ClassFamily {
  ClassSpec spec;
  int n = 0;
  FactoredPoly leading;
  BivarPoly leading_nf;
  std::vector<BasisElement> free;
  int total_degree = 0;
};

ClassFamily class_parametrize(const Curve& curve, const ClassSpec& spec, int n);

struct SolverOptions {
  /// Budget shared by Lawson iterations and refinement Newton steps.
  int max_iter = 500;
  /// Plain Lawson iterations before the barrier refinement starts.
  int lawson_iter = 40;
  /// Target relative gap between the Lawson lower bound and the best norm.
  double tol = 1e-8;
  double gamma = 1.0;
  /// Exponent used after the max modulus increases between iterations.
  double damped_gamma = 0.5;
  /// Relative ridge used when the weighted system is rank deficient.
  double ridge = 1e-12;
};

struct ChebSolve {
  ClassFamily family;
  /// Coefficients on family.free.
  std::vector<cplx> coefficients;
  BivarPoly minimizer;  // normal form of the optimal polynomial
  double norm = 0.0;
  double tn = 0.0;
  /// Certified lower bound on the discrete minimax value.
  double lower_bound = 0.0;
  int iterations = 0;
  bool converged = false;
  bool ridge_used = false;
  /// Set when the solve could not be carried out; numeric fields are then NaN.
  std::string error;

  int n() const { return family.n; }
  int total_degree() const { return family.total_degree; }
  bool ok() const { return error.empty(); }
  /// Value of the optimal polynomial, using factored evaluation.
  cplx eval(const Curve& curve, cplx z1, cplx z2) const;
};

/// Discrete complex minimax over the samples of K by Lawson's iteration.
ChebSolve minimax_solve(const Curve& curve, const ClassFamily& family, const SampledSet& K,
                        const SolverOptions& opts = {});

ChebSolve chebyshev_solve(const Curve& curve, const ClassSpec& spec, int n, const SampledSet& K,
                          const SolverOptions& opts = {});

/// One solve per n; failures are recorded in ChebSolve::error and the
/// remaining n are still attempted.
std::vector<ChebSolve> chebyshev_sequence(const Curve& curve, const ClassSpec& spec, const SampledSet& K,
                                          const std::vector<int>& ns, const SolverOptions& opts = {});

/// TailFit: intercept of a least-squares fit of log tn against 1/deg over the
/// tail, which removes the c^(1/deg) bias of finite n. CappedFit (multiplicative
/// classes): the same fit capped at min tn, since the constant is the infimum.
enum class EstimateMethod { CappedFit, TailFit };
std::string to_string(EstimateMethod m);

struct ConstantEstimate {
  std::string spec;
  std::vector<std::pair<int, double>> values;  // (n, tn)
  double estimate = 0.0;
  EstimateMethod method = EstimateMethod::TailFit;
  /// Range and geometric mean of the tail values.
  double lower = 0.0;
  double upper = 0.0;
  double tail_mean = 0.0;
  bool reliable = true;
};

ConstantEstimate constant_estimate(const std::vector<ChebSolve>& seq, const ClassSpec& spec);

struct Assertion {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  /// "eq" (relative), "le" (lhs <= rhs (1 + tol)) or "ge" (lhs >= rhs (1 - tol)).
  std::string relation;
  bool pass = false;
};

Assertion check_equal(std::string name, double lhs, double rhs, double rel_tol);
Assertion check_le(std::string name, double lhs, double rhs, double slack);
Assertion check_ge(std::string name, double lhs, double rhs, double slack);

struct ComparisonReport {
  std::vector<Assertion> assertions;
  std::vector<ConstantEstimate> estimates;
  /// Direction labels sorted by descending T(K, lambda_k).
  std::vector<int> descending;
  bool all_pass() const;
};

struct ComparisonOptions {
  /// Largest total degree used for any class.
  int max_degree = 16;
  double equality_tol = 0.10;
  double inequality_slack = 0.02;
  SolverOptions solver;
};

ComparisonReport comparison_report(const Curve& curve, const SampledSet& K, const ComparisonOptions& opts = {});

/// Total degree of the class at parameter n.
int class_degree(const Curve& curve, const ClassSpec& spec, int n);
/// Every n >= 1 whose total degree is at most max_degree.
std::vector<int> parameters_up_to_degree(const Curve& curve, const ClassSpec& spec, int max_degree);

/// Sequence and estimate for one class over all parameters up to max_degree.
ConstantEstimate estimate_class(const Curve& curve, const ClassSpec& spec, const SampledSet& K, int max_degree,
                                const SolverOptions& opts = {}, std::vector<ChebSolve>* solves = nullptr);

/// T(K, lambda_k) = T(K, M(v_k)) for k = 1..d.
std::vector<ConstantEstimate> directional_constants(const Curve& curve, const SampledSet& K, int max_degree,
                                                    const SolverOptions& opts = {});
/// Labels 1..d sorted by descending value; near ties go to the smaller arg(lambda).
std::vector<int> descending_labels(const std::vector<double>& values, const std::vector<cplx>& directions);

}  // namespace curvecheb
