#include "curvecheb/chebyshev.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "curvecheb/error.hpp"

namespace curvecheb {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_homogeneous(const BivarPoly& p, const char* name, int min_degree) {
  if (p.is_zero()) invalid(std::string(name) + " must be nonzero");
  if (p.degree() < min_degree) invalid(std::string(name) + " must have positive degree");
  if (!p.is_homogeneous()) invalid(std::string(name) + " must be homogeneous");
}

FactoredPoly factored_element(const Curve& curve, const BasisElement& e) {
  FactoredPoly f;
  if (e.z1pow > 0) f.factors.emplace_back(BivarPoly::z1(), e.z1pow);
  if (e.z2pow > 0) f.factors.emplace_back(BivarPoly::z2(), e.z2pow);
  if (e.vindex > 0 && e.vpow > 0) f.factors.emplace_back(curve.v(e.vindex), e.vpow);
  return f;
}

/// Index of z1^a v_k^q (or of a standard monomial) within C.
int c_index(const Curve& curve, int degree, int position) {
  return basis_count_to_degree(curve, degree - 1) + position + 1;
}

}  // namespace

LotMode lot_mode(const ClassSpec& spec) {
  return std::visit(overloaded{
                        [](const ClassZk&) { return LotMode::BasisS; },
                        [](const ClassTildeMl&) { return LotMode::BasisC; },
                        [](const ClassBasisPrefix& c) {
                          return c.basis == BasisId::S ? LotMode::BasisS : LotMode::BasisC;
                        },
                        [](const auto&) { return LotMode::Full; },
                    },
                    spec);
}

std::string describe(const ClassSpec& spec) {
  return std::visit(overloaded{
                        [](const ClassMQ& c) { return "M(" + c.Q.to_string() + ")"; },
                        [](const ClassMRQ& c) { return "M_{" + c.R.to_string() + "}(" + c.Q.to_string() + ")"; },
                        [](const ClassZk& c) { return "Z(" + std::to_string(c.k) + ")"; },
                        [](const ClassMz1jVk& c) {
                          return "M_{z1^" + std::to_string(c.j) + "}(v" + std::to_string(c.k) + ")";
                        },
                        [](const ClassTildeMl& c) {
                          return "Mtilde_" + std::to_string(c.l) + "(v" + std::to_string(c.j) + ")";
                        },
                        [](const ClassBasisPrefix& c) { return "tau(" + to_string(c.basis) + ")"; },
                    },
                    spec);
}

bool is_multiplicative(const ClassSpec& spec) { return std::holds_alternative<ClassMQ>(spec); }

cplx FactoredPoly::operator()(cplx z1, cplx z2) const {
  cplx val = scale;
  for (const auto& [p, k] : factors) val *= ipow(p(z1, z2), k);
  return val;
}

BivarPoly FactoredPoly::expand(const Curve& curve) const {
  BivarPoly out = BivarPoly::constant(scale);
  for (const auto& [p, k] : factors) {
    const BivarPoly base = curve.normal_form(p);
    for (int i = 0; i < k; ++i) out = curve.normal_form(out * base);
  }
  return out;
}

int class_degree(const Curve& curve, const ClassSpec& spec, int n) {
  const int d = curve.degree();
  return std::visit(overloaded{
                        [&](const ClassMQ& c) { return n * c.Q.degree(); },
                        [&](const ClassMRQ& c) { return c.R.degree() + n * c.Q.degree(); },
                        [&](const ClassZk& c) { return n + c.k; },
                        [&](const ClassMz1jVk& c) { return c.j + n * (d - 1); },
                        [&](const ClassTildeMl& c) { return c.l + n * (d - 1); },
                        [&](const ClassBasisPrefix&) { return basis_degree_of(curve, n); },
                    },
                    spec);
}

std::vector<int> parameters_up_to_degree(const Curve& curve, const ClassSpec& spec, int max_degree) {
  std::vector<int> ns;
  // Degrees grow with n for every class, so the scan stops at the first miss.
  for (int n = 1; n <= 4 * max_degree + 64 && class_degree(curve, spec, n) <= max_degree; ++n) ns.push_back(n);
  return ns;
}

ClassFamily class_parametrize(const Curve& curve, const ClassSpec& spec, int n) {
  if (n < 1) invalid("class parameter n must be >= 1");
  const int d = curve.degree();
  ClassFamily fam;
  fam.spec = spec;
  fam.n = n;
  // Index (1-based) of the leading element for prefix classes; 0 for full lot.
  int prefix_index = 0;
  BasisId prefix_basis = BasisId::S;

  std::visit(overloaded{
                 [&](const ClassMQ& c) {
                   require_homogeneous(c.Q, "Q", 1);
                   fam.leading.factors.emplace_back(c.Q, n);
                 },
                 [&](const ClassMRQ& c) {
                   require_homogeneous(c.R, "R", 0);
                   require_homogeneous(c.Q, "Q", 1);
                   fam.leading.factors.emplace_back(c.R, 1);
                   fam.leading.factors.emplace_back(c.Q, n);
                 },
                 [&](const ClassZk& c) {
                   if (c.k < 0 || c.k > d - 1)
                     invalid("Z(k) needs 0 <= k <= d-1 (k = " + std::to_string(c.k) + ")");
                   const int m = n + c.k;
                   if (c.k >= basis_block_size(curve, m)) invalid("Z(k): no element z2^k z1^n in S");
                   prefix_index = basis_count_to_degree(curve, m - 1) + c.k + 1;
                 },
                 [&](const ClassMz1jVk& c) {
                   if (c.j < 0 || c.j > d - 2)
                     invalid("M_{z1^j}(v_k) needs 0 <= j <= d-2 (j = " + std::to_string(c.j) + ")");
                   curve.require_directional("class M_{z1^j}(v_k)");
                   if (c.k < 1 || c.k > d) invalid("direction index out of range");
                   if (c.j > 0) fam.leading.factors.emplace_back(BivarPoly::z1(), c.j);
                   fam.leading.factors.emplace_back(curve.v(c.k), n);
                 },
                 [&](const ClassTildeMl& c) {
                   if (c.l < 0 || c.l > d - 2)
                     invalid("Mtilde_l(v_j) needs 0 <= l <= d-2 (l = " + std::to_string(c.l) + ")");
                   curve.require_directional("class Mtilde_l(v_j)");
                   if (c.j < 1 || c.j > d) invalid("direction index out of range");
                   prefix_basis = BasisId::C;
                   prefix_index = c_index(curve, c.l + n * (d - 1), c.j - 1);
                 },
                 [&](const ClassBasisPrefix& c) {
                   prefix_basis = c.basis;
                   prefix_index = n;
                 },
             },
             spec);

  if (prefix_index > 0) {
    auto elements = basis_enumerate(curve, prefix_basis, prefix_index);
    const BasisElement lead = elements.back();
    elements.pop_back();
    fam.leading = factored_element(curve, lead);
    fam.leading_nf = lead.poly;
    fam.total_degree = lead.degree;
    fam.free = std::move(elements);
    return fam;
  }

  fam.leading_nf = fam.leading.expand(curve);
  if (fam.leading_nf.is_zero()) invalid("leading term of " + describe(spec) + " vanishes on the curve");
  fam.total_degree = fam.leading_nf.degree();
  if (fam.total_degree > 0)
    fam.free = basis_enumerate(curve, BasisId::S, basis_count_to_degree(curve, fam.total_degree - 1));
  return fam;
}

cplx ChebSolve::eval(const Curve& curve, cplx z1, cplx z2) const {
  cplx val = family.leading(z1, z2);
  for (std::size_t j = 0; j < coefficients.size(); ++j)
    if (coefficients[j] != cplx(0.0)) val += coefficients[j] * family.free[j].eval(curve, z1, z2);
  return val;
}

namespace {

/// Lawson-Hanson active set method for min |A x - b| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter) {
  const Eigen::Index n = A.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  const double tol = 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff()) * std::max(1.0, b.norm());
  auto solve_passive = [&](std::vector<Eigen::Index>& idx) {
    idx.clear();
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[j]) idx.push_back(j);
    Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) Ap.col(static_cast<Eigen::Index>(k)) = A.col(idx[k]);
    return Eigen::VectorXd(Ap.colPivHouseholderQr().solve(b));
  };
  std::vector<Eigen::Index> idx;
  for (int outer = 0; outer < max_iter; ++outer) {
    const Eigen::VectorXd g = A.transpose() * (b - A * x);
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[j] && g(j) > tol && (best < 0 || g(j) > g(best))) best = j;
    if (best < 0) break;
    passive[best] = true;
    for (int inner = 0; inner < max_iter; ++inner) {
      const Eigen::VectorXd z = solve_passive(idx);
      double alpha = 1.0;
      bool feasible = true;
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (z(static_cast<Eigen::Index>(k)) <= 0) {
          feasible = false;
          const double xk = x(idx[k]);
          alpha = std::min(alpha, xk / (xk - z(static_cast<Eigen::Index>(k))));
        }
      if (feasible) {
        x.setZero();
        for (std::size_t k = 0; k < idx.size(); ++k) x(idx[k]) = z(static_cast<Eigen::Index>(k));
        break;
      }
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const Eigen::Index j = idx[k];
        x(j) += alpha * (z(static_cast<Eigen::Index>(k)) - x(j));
        if (x(j) <= 0) {
          x(j) = 0.0;
          passive[j] = false;
        }
      }
    }
  }
  return x;
}

/// Lawson state on the normalized problem min_c max_i |f_i + (B c)_i|, where
/// B has orthonormal columns.
class Minimax {
 public:
  Minimax(const Eigen::VectorXcd& f, const Eigen::MatrixXcd& B, const SolverOptions& opts)
      : f_(f), B_(B), opts_(opts), best_(Eigen::VectorXcd::Zero(B.cols())), bestE_(f.cwiseAbs().maxCoeff()) {}

  /// Weighted least squares for weights w (any scale). Returns false when the
  /// ridge fallback had to be used; then no lower bound is derived.
  bool weighted_ls(const Eigen::VectorXd& w, Eigen::VectorXcd& c, Eigen::VectorXd& absr) {
    const Eigen::Index N = B_.rows(), m = B_.cols();
    const double wmax = w.maxCoeff();
    rows_.clear();
    for (Eigen::Index i = 0; i < N; ++i)
      if (w(i) > 0 && w(i) >= 1e-30 * wmax) rows_.push_back(i);
    const Eigen::Index na = static_cast<Eigen::Index>(rows_.size());
    A_.resize(na, m);
    y_.resize(na);
    double wsum = 0.0;
    for (Eigen::Index r = 0; r < na; ++r) {
      const double sw = std::sqrt(w(rows_[r]));
      A_.row(r) = sw * B_.row(rows_[r]);
      y_(r) = -sw * f_(rows_[r]);
      wsum += w(rows_[r]);
    }
    bool exact = true;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A_);
    if (qr.rank() == m) {
      c = qr.solve(y_);
    } else {
      exact = false;
      ridge_used = true;
      const double mu = std::sqrt(opts_.ridge) * std::max(A_.norm(), 1e-300);
      Eigen::MatrixXcd aug(na + m, m);
      aug << A_, mu * Eigen::MatrixXcd::Identity(m, m);
      Eigen::VectorXcd yaug(na + m);
      yaug << y_, Eigen::VectorXcd::Zero(m);
      c = aug.colPivHouseholderQr().solve(yaug);
    }
    const Eigen::VectorXcd r = f_ + B_ * c;
    absr = r.cwiseAbs();
    if (exact) {
      dual_bound(w.cast<cplx>().cwiseProduct(r));
      double wr = 0.0;
      for (Eigen::Index i : rows_) wr += w(i) * absr(i) * absr(i);
      lower = std::max(lower, std::sqrt(wr / wsum));
    }
    offer(c, absr.maxCoeff());
    return exact;
  }

  /// Any u orthogonal to the columns gives max|r| >= |u^H f| / |u|_1 for every
  /// coefficient vector; u0 is projected onto that complement first.
  void dual_bound(const Eigen::VectorXcd& u0) {
    const Eigen::VectorXcd u = u0 - B_ * (B_.adjoint() * u0);
    const double l1 = u.cwiseAbs().sum();
    if (l1 > 0 && std::isfinite(l1)) lower = std::max(lower, std::abs(u.dot(f_)) / l1);
  }

  /// Certificate from the best iterate: nonnegative weights on its nearly
  /// active samples that make w * r orthogonal to the columns. They exist when
  /// the iterate is optimal to within the tolerance.
  void active_set_bound() {
    const Eigen::Index m = B_.cols();
    const Eigen::VectorXcd r = f_ + B_ * best_;
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < r.size(); ++i)
      if (std::abs(r(i)) >= bestE_ * (1.0 - 0.25 * opts_.tol)) support.push_back(i);
    const Eigen::Index na = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd A(2 * m + 1, na);
    for (Eigen::Index a = 0; a < na; ++a) {
      const Eigen::Index i = support[a];
      const Eigen::VectorXcd col = B_.row(i).adjoint() * (r(i) / bestE_);
      A.col(a) << col.real(), col.imag(), 1.0;
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * m + 1);
    b(2 * m) = 1.0;
    const Eigen::VectorXd w = nnls(A, b, 3 * (2 * m + 1));
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(B_.rows());
    for (Eigen::Index a = 0; a < na; ++a) u(support[a]) = w(a) * r(support[a]);
    dual_bound(u);
  }

  void offer(const Eigen::VectorXcd& c, double E) {
    if (E < bestE_) {
      bestE_ = E;
      best_ = c;
    }
  }

  bool done() const { return bestE_ == 0.0 || bestE_ - lower <= opts_.tol * bestE_; }

  /// Classical Lawson iteration: w <- w |r|^gamma.
  void lawson(int iterations) {
    const Eigen::Index N = B_.rows();
    Eigen::VectorXd w = Eigen::VectorXd::Constant(N, 1.0 / static_cast<double>(N));
    Eigen::VectorXcd c;
    Eigen::VectorXd absr;
    double prevE = std::numeric_limits<double>::infinity();
    double gamma = opts_.gamma;
    for (int it = 0; it < iterations && !done(); ++it) {
      ++used;
      weighted_ls(w, c, absr);
      const double E = absr.maxCoeff();
      if (E > prevE) gamma = opts_.damped_gamma;
      prevE = E;
      for (Eigen::Index i = 0; i < N; ++i) w(i) *= std::pow(absr(i), gamma);
      const double s = w.sum();
      if (!(s > 0) || !std::isfinite(s)) break;
      w /= s;
    }
  }

  /// Newton steps on tau t - sum log(t^2 - |r_i|^2). At each centered point the
  /// inverse slacks are Lawson weights whose least-squares problem certifies a
  /// lower bound, so the stopping rule stays the Lawson duality gap.
  void barrier(int budget) {
    const Eigen::Index N = B_.rows(), m = B_.cols(), nx = 2 * m + 1;
    Eigen::MatrixXd Ar(N, 2 * m), Ai(N, 2 * m);
    Ar << B_.real(), -B_.imag();
    Ai << B_.imag(), B_.real();
    Eigen::VectorXd x(nx);
    x << best_.real(), best_.imag(), 0.0;
    auto residual = [&](const Eigen::VectorXd& xx, Eigen::VectorXd& rr, Eigen::VectorXd& ri) {
      rr = f_.real() + Ar * xx.head(2 * m);
      ri = f_.imag() + Ai * xx.head(2 * m);
    };
    Eigen::VectorXd rr, ri, s(N), trial_rr, trial_ri;
    residual(x, rr, ri);
    const double E0 = (rr.array().square() + ri.array().square()).sqrt().maxCoeff();
    x(nx - 1) = E0 * (1.0 + std::max(1e-3, 4.0 * (E0 - lower) / std::max(E0, 1e-300)));
    auto slacks = [&](double t, const Eigen::VectorXd& a, const Eigen::VectorXd& b, Eigen::VectorXd& out) {
      out = t * t - a.array().square() - b.array().square();
      return out.minCoeff() > 0;
    };
    slacks(x(nx - 1), rr, ri, s);
    double tau = (2.0 * x(nx - 1) / s.array()).sum();

    Eigen::MatrixXd Z(3 * N, nx);
    Eigen::VectorXd grad(nx), step(nx), trial(nx), trial_s(N);
    Eigen::VectorXcd c(m);
    Eigen::VectorXd absr;

    while (budget > 0 && !done()) {
      // Centering.
      for (int k = 0; k < 60 && budget > 0; ++k, --budget, ++used) {
        const double t = x(nx - 1);
        const Eigen::ArrayXd inv = 1.0 / s.array();
        grad.head(2 * m) = Ar.transpose() * (2.0 * rr.array() * inv).matrix() +
                           Ai.transpose() * (2.0 * ri.array() * inv).matrix();
        grad(nx - 1) = tau - (2.0 * t * inv).sum();
        // The Hessian of -log(t^2 - |r|^2) is (2/s^2) P(y)^2 with y the square
        // root of (t, -r) in the Jordan algebra of the cone and
        // P(y) = 2 y y^T - sqrt(s) diag(1, -1, -1). Stacking the factors keeps
        // the Hessian positive definite once the slacks get small; QR of the
        // stack is the fallback when its Gram matrix fails to factor.
        for (Eigen::Index i = 0; i < N; ++i) {
          const double nr = std::hypot(rr(i), ri(i));
          const double lp = t + nr, sq = std::sqrt(s(i));
          const double rp = std::sqrt(lp), rm = sq / rp;
          const double y0 = 0.5 * (rp + rm), ya = 0.5 * (rp - rm);
          const double u1 = nr > 0 ? -rr(i) / nr : 0.0, u2 = nr > 0 ? -ri(i) / nr : 0.0;
          const double y1 = ya * u1, y2 = ya * u2;
          const double scale = std::sqrt(2.0) / s(i);
          // y^T E_i as a row over (x, t).
          Eigen::RowVectorXd yE(nx);
          yE.head(2 * m) = y1 * Ar.row(i) + y2 * Ai.row(i);
          yE(nx - 1) = y0;
          Z.row(3 * i) = scale * 2.0 * y0 * yE;
          Z(3 * i, nx - 1) -= scale * sq;
          Z.row(3 * i + 1) = scale * 2.0 * y1 * yE;
          Z.row(3 * i + 1).head(2 * m) += scale * sq * Ar.row(i);
          Z.row(3 * i + 2) = scale * 2.0 * y2 * yE;
          Z.row(3 * i + 2).head(2 * m) += scale * sq * Ai.row(i);
        }
        Eigen::LLT<Eigen::MatrixXd> llt(Z.transpose() * Z);
        step = llt.solve(-grad);
        if (llt.info() != Eigen::Success || !(grad.dot(step) < 0)) {
          Eigen::ColPivHouseholderQR<Eigen::MatrixXd> zqr(Z);
          if (zqr.rank() < nx) break;
          const auto Rz = zqr.matrixR().topLeftCorner(nx, nx).triangularView<Eigen::Upper>();
          const Eigen::VectorXd pg = zqr.colsPermutation().transpose() * grad;
          const Eigen::VectorXd half = Rz.transpose().solve(pg);
          step = -(zqr.colsPermutation() * Rz.solve(half));
        }
        const double dec = -grad.dot(step);
        if (!std::isfinite(dec) || dec < 1e-9) break;
        double alpha = 1.0;
        bool moved = false;
        for (int h = 0; h < 60; ++h, alpha *= 0.5) {
          trial = x + alpha * step;
          residual(trial, trial_rr, trial_ri);
          if (!slacks(trial(nx - 1), trial_rr, trial_ri, trial_s)) continue;
          // Change of the barrier objective, formed directly: tau t is far
          // larger than the decrease near the end.
          const double change = tau * alpha * step(nx - 1) - (trial_s.array() / s.array()).log().sum();
          if (change <= -0.25 * alpha * dec) {
            moved = true;
            break;
          }
        }
        if (!moved) break;
        x = trial;
        rr = trial_rr;
        ri = trial_ri;
        s = trial_s;
        if (dec < 1e-6) break;
      }
      c.real() = x.head(m);
      c.imag() = x.segment(m, m);
      offer(c, (rr.array().square() + ri.array().square()).sqrt().maxCoeff());
      Eigen::VectorXcd u0(N);
      u0.real() = rr.array() / s.array();
      u0.imag() = ri.array() / s.array();
      dual_bound(u0);
      if (!done()) active_set_bound();
      if (!done()) weighted_ls((1.0 / s.array()).matrix(), c, absr);
      --budget;
      ++used;
      tau *= 10.0;
      if (!std::isfinite(tau)) break;
    }
  }

  const Eigen::VectorXcd& best() const { return best_; }
  double best_norm() const { return bestE_; }

  double lower = 0.0;
  int used = 0;
  bool ridge_used = false;

 private:
  const Eigen::VectorXcd& f_;
  const Eigen::MatrixXcd& B_;
  const SolverOptions& opts_;
  Eigen::VectorXcd best_;
  double bestE_;
  Eigen::MatrixXcd A_;
  Eigen::VectorXcd y_;
  std::vector<Eigen::Index> rows_;
};

}  // namespace

ChebSolve minimax_solve(const Curve& curve, const ClassFamily& family, const SampledSet& K,
                        const SolverOptions& opts) {
  const auto& pts = K.points();
  const Eigen::Index N = static_cast<Eigen::Index>(pts.size());
  const Eigen::Index m = static_cast<Eigen::Index>(family.free.size());
  if (N == 0) invalid("empty sample set");
  if (opts.max_iter < 1 || !(opts.tol >= 0) || !(opts.gamma > 0) || !(opts.damped_gamma > 0) ||
      opts.lawson_iter < 0)
    invalid("invalid solver options");

  ChebSolve out;
  out.family = family;

  Eigen::VectorXcd f(N);
  Eigen::MatrixXcd B(N, m);
  for (Eigen::Index i = 0; i < N; ++i) {
    f(i) = family.leading(pts[i].z1, pts[i].z2);
    for (Eigen::Index j = 0; j < m; ++j) B(i, j) = family.free[j].eval(curve, pts[i].z1, pts[i].z2);
  }
  const double fscale = f.cwiseAbs().maxCoeff();
  Eigen::VectorXd colscale = Eigen::VectorXd::Ones(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double s = B.col(j).cwiseAbs().maxCoeff();
    if (s > 0) colscale(j) = s;
    B.col(j) /= colscale(j);
  }

  Eigen::VectorXcd best = Eigen::VectorXcd::Zero(m);
  if (fscale == 0.0 || m == 0) {
    out.norm = out.lower_bound = fscale;
    out.converged = true;
  } else {
    // Work in an orthonormal basis of span(B) and remove the least-squares
    // part of f, so that the residuals are computed without cancellation.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(B);
    qr.setThreshold(1e-13);
    const Eigen::Index rank = qr.rank();
    const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(N, rank);
    const Eigen::VectorXcd fs = f / fscale;
    const Eigen::VectorXcd proj = Q.adjoint() * fs;
    const Eigen::VectorXcd g = fs - Q * proj;
    Eigen::VectorXcd y;
    if (rank == N) {
      // The free part interpolates every sample.
      y = -proj * fscale;
      out.converged = true;
      out.ridge_used = rank < m;
      out.norm = out.lower_bound = g.cwiseAbs().maxCoeff() * fscale;
    } else {
      Minimax mm(g, Q, opts);
      mm.ridge_used = rank < m;
      mm.lawson(std::min(opts.max_iter, opts.lawson_iter));
      if (!mm.done() && mm.used < opts.max_iter) mm.barrier(opts.max_iter - mm.used);
      if (!mm.done() && mm.used < opts.max_iter) mm.lawson(opts.max_iter - mm.used);
      y = (mm.best() - proj) * fscale;
      out.iterations = mm.used;
      out.converged = mm.done();
      out.ridge_used = mm.ridge_used;
      out.norm = mm.best_norm() * fscale;
      out.lower_bound = std::min(mm.lower, mm.best_norm()) * fscale;
    }
    // Back to the original coefficients; columns beyond the rank stay zero.
    const Eigen::MatrixXcd R = qr.matrixR().topLeftCorner(rank, rank).triangularView<Eigen::Upper>();
    const Eigen::VectorXcd cp = R.triangularView<Eigen::Upper>().solve(y);
    Eigen::VectorXcd permuted = Eigen::VectorXcd::Zero(m);
    permuted.head(rank) = cp;
    best = qr.colsPermutation() * permuted;
  }
  const double D = family.total_degree;
  out.tn = D > 0 ? std::pow(out.norm, 1.0 / D) : out.norm;
  out.coefficients.resize(m);
  BivarPoly p = family.leading_nf;
  for (Eigen::Index j = 0; j < m; ++j) {
    out.coefficients[j] = best(j) / colscale(j);
    if (out.coefficients[j] != cplx(0.0)) p += family.free[j].poly * out.coefficients[j];
  }
  out.minimizer = curve.normal_form(p);
  return out;
}

ChebSolve chebyshev_solve(const Curve& curve, const ClassSpec& spec, int n, const SampledSet& K,
                          const SolverOptions& opts) {
  return minimax_solve(curve, class_parametrize(curve, spec, n), K, opts);
}

std::vector<ChebSolve> chebyshev_sequence(const Curve& curve, const ClassSpec& spec, const SampledSet& K,
                                          const std::vector<int>& ns, const SolverOptions& opts) {
  if (ns.empty()) invalid("empty range of n");
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1]) invalid("range of n must be increasing");
  std::vector<ChebSolve> out;
  out.reserve(ns.size());
  for (int n : ns) {
    try {
      out.push_back(chebyshev_solve(curve, spec, n, K, opts));
    } catch (const Error& e) {
      // Class errors are the caller's fault and apply to every n.
      if (e.kind() == ErrorKind::InvalidInput) throw;
      ChebSolve failed;
      failed.family.spec = spec;
      failed.family.n = n;
      failed.norm = failed.tn = failed.lower_bound = kNaN;
      failed.error = e.what();
      out.push_back(std::move(failed));
    }
  }
  return out;
}

std::string to_string(EstimateMethod m) { return m == EstimateMethod::CappedFit ? "cappedFit" : "tailFit"; }

ConstantEstimate constant_estimate(const std::vector<ChebSolve>& seq, const ClassSpec& spec) {
  ConstantEstimate est;
  est.spec = describe(spec);
  std::vector<const ChebSolve*> good;
  for (const auto& s : seq) {
    if (!s.ok()) {
      est.reliable = false;
      continue;
    }
    good.push_back(&s);
    est.values.emplace_back(s.n(), s.tn);
  }
  if (good.size() < 3) invalid("a constant estimate needs at least 3 successful solves");
  const std::size_t count = good.size();
  const std::size_t tail = std::max<std::size_t>(3, (count + 1) / 2);
  const std::size_t first = count - tail;
  double tmin = std::numeric_limits<double>::infinity(), tmax = 0.0, logsum = 0.0;
  for (std::size_t i = first; i < count; ++i) {
    tmin = std::min(tmin, good[i]->tn);
    tmax = std::max(tmax, good[i]->tn);
    logsum += std::log(good[i]->tn);
    if (!good[i]->converged) est.reliable = false;
  }
  est.lower = tmin;
  est.upper = tmax;
  est.tail_mean = std::exp(logsum / static_cast<double>(tail));
  double all_min = tmin;
  for (const auto* s : good) all_min = std::min(all_min, s->tn);
  const bool capped = is_multiplicative(spec);
  est.method = capped ? EstimateMethod::CappedFit : EstimateMethod::TailFit;
  if (!(tmin > 0)) {
    est.estimate = tmin;
    return est;
  }
  // log tn = a + b / deg by least squares.
  Eigen::MatrixXd X(static_cast<Eigen::Index>(tail), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(tail));
  for (std::size_t i = first; i < count; ++i) {
    const auto r = static_cast<Eigen::Index>(i - first);
    X(r, 0) = 1.0;
    X(r, 1) = 1.0 / std::max(1, good[i]->total_degree());
    y(r) = std::log(good[i]->tn);
  }
  const Eigen::Vector2d ab = X.colPivHouseholderQr().solve(y);
  est.estimate = std::isfinite(ab(0)) && ab(0) > -700.0 ? std::exp(ab(0)) : est.tail_mean;
  // The constant of a multiplicative class is the infimum of tn.
  if (capped) est.estimate = std::min(est.estimate, all_min);
  return est;
}

Assertion check_equal(std::string name, double lhs, double rhs, double rel_tol) {
  Assertion a{std::move(name), lhs, rhs, rel_tol, "eq", false};
  a.pass = std::abs(lhs - rhs) <= rel_tol * std::abs(rhs);
  return a;
}

Assertion check_le(std::string name, double lhs, double rhs, double slack) {
  Assertion a{std::move(name), lhs, rhs, slack, "le", false};
  a.pass = lhs <= rhs * (1.0 + slack);
  return a;
}

Assertion check_ge(std::string name, double lhs, double rhs, double slack) {
  Assertion a{std::move(name), lhs, rhs, slack, "ge", false};
  a.pass = lhs >= rhs * (1.0 - slack);
  return a;
}

bool ComparisonReport::all_pass() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

ConstantEstimate estimate_class(const Curve& curve, const ClassSpec& spec, const SampledSet& K, int max_degree,
                                const SolverOptions& opts, std::vector<ChebSolve>* solves) {
  auto seq = chebyshev_sequence(curve, spec, K, parameters_up_to_degree(curve, spec, max_degree), opts);
  auto est = constant_estimate(seq, spec);
  if (solves) *solves = std::move(seq);
  return est;
}

std::vector<ConstantEstimate> directional_constants(const Curve& curve, const SampledSet& K, int max_degree,
                                                    const SolverOptions& opts) {
  curve.require_directional("directional Chebyshev constants");
  std::vector<ConstantEstimate> out;
  for (int k = 1; k <= curve.degree(); ++k) {
    auto est = estimate_class(curve, ClassMQ{curve.v(k)}, K, max_degree, opts);
    est.spec = "T(lambda_" + std::to_string(k) + ")";
    out.push_back(std::move(est));
  }
  return out;
}

std::vector<int> descending_labels(const std::vector<double>& values, const std::vector<cplx>& directions) {
  std::vector<int> labels(values.size());
  std::iota(labels.begin(), labels.end(), 1);
  auto arg_of = [&](int k) {
    return static_cast<std::size_t>(k - 1) < directions.size() ? std::arg(directions[k - 1]) : 0.0;
  };
  std::stable_sort(labels.begin(), labels.end(), [&](int a, int b) {
    const double va = values[a - 1], vb = values[b - 1];
    if (std::abs(va - vb) > 1e-6 * std::max(std::abs(va), std::abs(vb))) return va > vb;
    return arg_of(a) < arg_of(b);
  });
  return labels;
}

ComparisonReport comparison_report(const Curve& curve, const SampledSet& K, const ComparisonOptions& opts) {
  curve.require_directional("comparison report");
  const int d = curve.degree();
  const int D = opts.max_degree;
  const double eq = opts.equality_tol, slack = opts.inequality_slack;
  ComparisonReport rep;
  auto estimate = [&](const ClassSpec& spec) {
    auto e = estimate_class(curve, spec, K, D, opts.solver);
    rep.estimates.push_back(e);
    return e.estimate;
  };

  std::vector<double> T(d);
  for (int k = 1; k <= d; ++k) {
    T[k - 1] = estimate(ClassMQ{curve.v(k)});
    rep.estimates.back().spec = "T(lambda_" + std::to_string(k) + ")";
  }
  rep.descending = descending_labels(T, curve.directions());

  // Corollary-3 style comparisons with R = z1 (and z2), Q = v_1.
  const BivarPoly Q = curve.v(1);
  const BivarPoly z1 = BivarPoly::z1(), z2 = BivarPoly::z2();
  const double tR = estimate(ClassMRQ{z1, Q});
  const double tR1R2 = estimate(ClassMRQ{z1 * z2, Q});
  rep.assertions.push_back(check_le("T(M_{z1 z2}(v1)) <= T(M_{z1}(v1))", tR1R2, tR, slack));
  const double tcR = estimate(ClassMRQ{z1 * cplx(3.0), Q});
  rep.assertions.push_back(check_equal("T(M_{3 z1}(v1)) = T(M_{z1}(v1))", tcR, tR, eq));
  // Scaling Q by lambda scales the norms by |lambda|^n at total degree
  // 1 + n deg(Q), so the constant scales by |lambda|^(1/deg Q).
  const cplx lam(0.0, 2.0);
  const double tlQ = estimate(ClassMRQ{z1, Q * lam});
  rep.assertions.push_back(check_equal("T(M_{z1}(2i v1)) = |2i|^(1/deg v1) T(M_{z1}(v1))", tlQ,
                                       std::pow(std::abs(lam), 1.0 / Q.degree()) * tR, eq));
  const double tRQ = estimate(ClassMRQ{z1 * Q, Q});
  rep.assertions.push_back(check_equal("T(M_{z1 v1}(v1)) = T(M_{z1}(v1))", tRQ, tR, eq));
  const double tR2 = estimate(ClassMRQ{z2, Q});
  const double tSum = estimate(ClassMRQ{z1 + z2, Q});
  rep.assertions.push_back(check_le("T(M_{z1+z2}(v1)) <= max(T(M_{z1}(v1)), T(M_{z2}(v1)))", tSum,
                                    std::max(tR, tR2), slack));

  for (int k = 1; k <= d; ++k) {
    const std::string kk = std::to_string(k);
    for (int j1 = 0; j1 <= d - 2; ++j1)
      for (int j2 = 0; j1 + j2 <= d - 2; ++j2) {
        if (j1 == 0 && j2 == 0) continue;
        const double t = estimate(ClassMRQ{BivarPoly::monomial(j1, j2), curve.v(k)});
        rep.assertions.push_back(check_equal("T(M_{z1^" + std::to_string(j1) + " z2^" + std::to_string(j2) +
                                                 "}(v" + kk + ")) = T(lambda_" + kk + ")",
                                             t, T[k - 1], eq));
      }
    const double told = estimate(ClassMRQ{curve.v(k), z1});
    rep.assertions.push_back(check_equal("T(M_{v" + kk + "}(z1)) = T(lambda_" + kk + ")", told, T[k - 1], eq));
  }

  std::vector<double> Z(d);
  for (int k = 0; k < d; ++k) Z[k] = estimate(ClassZk{k});
  for (int k = 1; k <= d; ++k) {
    const int lab = rep.descending[k - 1];
    const std::string name = "T(Z(" + std::to_string(k - 1) + ")) = T(lambda_" + std::to_string(lab) + ")";
    rep.assertions.push_back(check_equal(name, Z[k - 1], T[lab - 1], eq));
    if (k >= 2)
      rep.assertions.push_back(check_le("T(Z(" + std::to_string(k - 1) + ")) <= T(lambda_" +
                                            std::to_string(lab) + ")",
                                        Z[k - 1], T[lab - 1], slack));
  }
  for (int k = 1; k < d; ++k)
    rep.assertions.push_back(check_ge("T(Z(" + std::to_string(k - 1) + ")) >= T(Z(" + std::to_string(k) + "))",
                                      Z[k - 1], Z[k], slack));
  return rep;
}

}  // namespace curvecheb
