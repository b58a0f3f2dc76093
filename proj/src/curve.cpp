#include "curvecheb/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "curvecheb/error.hpp"
#include "curvecheb/rng.hpp"

namespace curvecheb {

namespace {

constexpr double kVanishing = 1e-12;

bool direction_less(cplx x, cplx y, double scale) {
  if (std::abs(x.real() - y.real()) > 1e-9 * scale) return x.real() < y.real();
  return x.imag() < y.imag();
}

}  // namespace

Curve Curve::create(const BivarPoly& P, const CurveOptions& opts) {
  if (P.is_zero() || P.degree() < 2) invalid("curve degree must be at least 2 (got " +
                                             std::to_string(P.is_zero() ? -1 : P.degree()) + ")");
  Curve c;
  c.P_ = P;
  c.d_ = P.degree();
  c.relaxed_ = opts.relaxed;
  const int d = c.d_;
  const BivarPoly h = homogeneous_part(P, d);
  const double scale = h.max_abs_coeff();
  c.lead_ = h.coeff(0, d);
  // The top-degree term with the largest power of z2 leads in the graded order.
  c.lm_ = h.terms().rbegin()->first;

  std::string problem;
  std::vector<cplx> roots;
  const cplx c0 = h.coeff(d, 0);
  if (std::abs(c0) <= kVanishing * scale) {
    problem = std::abs(h.coeff(d - 1, 1)) <= kVanishing * scale ? "axis-parallel asymptote"
                                                                   : "horizontal asymptote";
  } else if (std::abs(c.lead_) <= kVanishing * scale) {
    problem = "axis-parallel asymptote";
  } else {
    std::vector<cplx> coeffs(d + 1);
    for (int b = 0; b <= d; ++b) coeffs[b] = h.coeff(d - b, b);
    roots = polynomial_roots(coeffs);
    double rmax = 0.0;
    for (const auto& r : roots) rmax = std::max(rmax, std::abs(r));
    for (std::size_t i = 0; i < roots.size() && problem.empty(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j)
        if (std::abs(roots[i] - roots[j]) < opts.separation_tol * rmax) {
          problem = "non-distinct directions";
          break;
        }
    if (problem.empty()) {
      std::sort(roots.begin(), roots.end(),
                [rmax](cplx x, cplx y) { return direction_less(x, y, rmax); });
    }
  }

  if (!problem.empty()) {
    if (!opts.relaxed) invalid(problem);
    return c;
  }

  c.directions_ = roots;
  c.ordering_.resize(d);
  for (int k = 0; k < d; ++k) {
    c.ordering_[k] = k + 1;
    BivarPoly v = BivarPoly::constant(1.0);
    for (int j = 0; j < d; ++j) {
      if (j == k) continue;
      const cplx denom = roots[k] - roots[j];
      BivarPoly factor = BivarPoly::z2() - BivarPoly::monomial(1, 0, roots[j]);
      v = v * (factor * (1.0 / denom));
    }
    c.dirbasis_.push_back(std::move(v));
  }
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      const cplx val = c.dirbasis_[j](1.0, roots[k]);
      if (std::abs(val - (j == k ? 1.0 : 0.0)) > 1e-10)
        invalid("directional basis normalization failed (ill-conditioned directions)");
    }
  return c;
}

cplx Curve::direction(int k) const {
  if (k < 1 || k > static_cast<int>(directions_.size()))
    invalid("direction index " + std::to_string(k) + " out of range");
  return directions_[k - 1];
}

const BivarPoly& Curve::v(int k) const {
  if (k < 1 || k > static_cast<int>(dirbasis_.size()))
    invalid("direction index " + std::to_string(k) + " out of range");
  return dirbasis_[k - 1];
}

Curve Curve::with_ordering(const std::vector<int>& perm) const {
  require_directional("relabelling directions");
  if (static_cast<int>(perm.size()) != d_) invalid("ordering must list every direction once");
  std::vector<bool> seen(d_, false);
  Curve out = *this;
  for (int i = 0; i < d_; ++i) {
    const int src = perm[i];
    if (src < 1 || src > d_ || seen[src - 1]) invalid("ordering is not a permutation");
    seen[src - 1] = true;
    out.directions_[i] = directions_[src - 1];
    out.dirbasis_[i] = dirbasis_[src - 1];
    out.ordering_[i] = ordering_[src - 1];
  }
  return out;
}

BivarPoly Curve::normal_form(const BivarPoly& p) const {
  const cplx lc = P_.coeff(lm_.a, lm_.b);
  std::vector<std::pair<Monomial, cplx>> tail;
  for (const auto& [m, c] : P_.terms())
    if (!(m == lm_)) tail.emplace_back(m, c / lc);

  BivarPoly::TermMap terms = p.terms();
  auto it = terms.end();
  while (it != terms.begin()) {
    --it;
    if (!lm_.divides(it->first)) continue;
    const Monomial m = it->first;
    const cplx c = it->second;
    it = terms.erase(it);
    const Monomial shift{m.a - lm_.a, m.b - lm_.b};
    // Every tail monomial is smaller than lm_, so the new terms land below m.
    for (const auto& [t, ct] : tail) {
      auto [pos, inserted] = terms.try_emplace({t.a + shift.a, t.b + shift.b}, -c * ct);
      if (!inserted) pos->second -= c * ct;
    }
  }
  return BivarPoly::from_map(std::move(terms));
}

void Curve::require_directional(const std::string& what) const {
  if (relaxed_) invalid(what + " is unavailable in relaxed mode");
  if (!has_directions()) invalid(what + " requires asymptotic directions");
}

std::string Curve::describe() const {
  std::ostringstream os;
  os << "P = " << P_.to_string() << "\n";
  os << "d = " << d_ << ", lead coefficient = " << lead_ << (relaxed_ ? " (relaxed)" : "") << "\n";
  for (std::size_t k = 0; k < directions_.size(); ++k)
    os << "lambda_" << k + 1 << " = " << directions_[k] << "\n";
  return os.str();
}

namespace curves {

BivarPoly hyperbola() {
  return BivarPoly::from_terms({{{2, 0}, 1.0}, {{0, 2}, -1.0}, {{0, 0}, -1.0}});
}

BivarPoly a_eps(double eps) { return BivarPoly::from_terms({{{1, 1}, 1.0}, {{0, 0}, -eps}}); }

BivarPoly random_curve(int d, unsigned long long seed) {
  if (d < 2) invalid("random curve degree must be at least 2");
  Rng rng(seed);
  BivarPoly P = BivarPoly::constant(1.0);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  for (int k = 0; k < d; ++k) {
    const double theta = phase + 2.0 * std::numbers::pi * (k + rng.uniform(0.1, 0.6)) / d;
    const double rho = rng.uniform(0.6, 1.6);
    const cplx lambda = std::polar(rho, theta);
    P = P * (BivarPoly::z2() - BivarPoly::monomial(1, 0, lambda));
  }
  for (int deg = 0; deg < d; ++deg)
    for (int b = 0; b <= deg; ++b) {
      const cplx c(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
      P += BivarPoly::monomial(deg - b, b, c);
    }
  return P;
}

}  // namespace curves

}  // namespace curvecheb
