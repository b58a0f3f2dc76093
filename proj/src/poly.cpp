#include "curvecheb/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "curvecheb/error.hpp"

namespace curvecheb {

BivarPoly BivarPoly::constant(cplx c) { return monomial(0, 0, c); }

BivarPoly BivarPoly::monomial(int a, int b, cplx c) {
  if (a < 0 || b < 0) invalid("negative exponent");
  BivarPoly p;
  if (c != cplx(0.0)) p.terms_[{a, b}] = c;
  return p;
}

BivarPoly BivarPoly::from_terms(const std::vector<std::pair<Monomial, cplx>>& terms) {
  BivarPoly p;
  for (const auto& [m, c] : terms) {
    if (m.a < 0 || m.b < 0) invalid("negative exponent");
    p.add_term(m, c);
  }
  p.prune();
  return p;
}

BivarPoly BivarPoly::from_map(TermMap terms) {
  BivarPoly p;
  p.terms_ = std::move(terms);
  p.prune();
  return p;
}

int BivarPoly::degree() const {
  if (terms_.empty()) return kZeroDegree;
  return terms_.rbegin()->first.degree();
}

cplx BivarPoly::coeff(int a, int b) const {
  auto it = terms_.find({a, b});
  return it == terms_.end() ? cplx(0.0) : it->second;
}

double BivarPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [_, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool BivarPoly::is_homogeneous() const {
  if (terms_.empty()) return false;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

cplx BivarPoly::operator()(cplx z1, cplx z2) const {
  if (terms_.empty()) return 0.0;
  int max_a = 0, max_b = 0;
  for (const auto& [m, _] : terms_) {
    max_a = std::max(max_a, m.a);
    max_b = std::max(max_b, m.b);
  }
  std::vector<cplx> p1(max_a + 1), p2(max_b + 1);
  p1[0] = p2[0] = 1.0;
  for (int i = 1; i <= max_a; ++i) p1[i] = p1[i - 1] * z1;
  for (int i = 1; i <= max_b; ++i) p2[i] = p2[i - 1] * z2;
  cplx s = 0.0;
  for (const auto& [m, c] : terms_) s += c * p1[m.a] * p2[m.b];
  return s;
}

void BivarPoly::add_term(const Monomial& m, cplx c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void BivarPoly::prune() {
  const double thr = kPruneRelative * max_abs_coeff();
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= thr || it->second == cplx(0.0))
      it = terms_.erase(it);
    else
      ++it;
  }
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  prune();
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  prune();
  return *this;
}

BivarPoly& BivarPoly::operator*=(cplx s) {
  if (s == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [_, c] : terms_) c *= s;
  prune();
  return *this;
}

BivarPoly BivarPoly::pow(int n) const {
  if (n < 0) invalid("negative power");
  BivarPoly result = constant(1.0);
  BivarPoly base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::string BivarPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    os << ")";
    if (m.a > 0) os << "*z1" << (m.a > 1 ? "^" + std::to_string(m.a) : "");
    if (m.b > 0) os << "*z2" << (m.b > 1 ? "^" + std::to_string(m.b) : "");
  }
  return os.str();
}

BivarPoly operator+(BivarPoly p, const BivarPoly& q) { return p += q; }
BivarPoly operator-(BivarPoly p, const BivarPoly& q) { return p -= q; }
BivarPoly operator-(BivarPoly p) { return p *= -1.0; }
BivarPoly operator*(BivarPoly p, cplx s) { return p *= s; }
BivarPoly operator*(cplx s, BivarPoly p) { return p *= s; }

BivarPoly multiply(const BivarPoly& p, const BivarPoly& q) {
  BivarPoly r;
  for (const auto& [m1, c1] : p.terms())
    for (const auto& [m2, c2] : q.terms()) r.add_term({m1.a + m2.a, m1.b + m2.b}, c1 * c2);
  r.prune();
  return r;
}

BivarPoly operator*(const BivarPoly& p, const BivarPoly& q) { return multiply(p, q); }

BivarPoly leading_part(const BivarPoly& p) {
  if (p.is_zero()) invalid("zero polynomial has no leading part");
  return homogeneous_part(p, p.degree());
}

BivarPoly homogeneous_part(const BivarPoly& p, int n) {
  BivarPoly h;
  for (const auto& [m, c] : p.terms())
    if (m.degree() == n) h.add_term(m, c);
  return h;
}

double max_coeff_distance(const BivarPoly& p, const BivarPoly& q) {
  double d = 0.0;
  for (const auto& [m, c] : p.terms()) d = std::max(d, std::abs(c - q.coeff(m.a, m.b)));
  for (const auto& [m, c] : q.terms())
    if (p.terms().find(m) == p.terms().end()) d = std::max(d, std::abs(c));
  return d;
}

namespace {

cplx horner(const std::vector<cplx>& c, cplx x, cplx* deriv) {
  cplx v = 0.0, dv = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dv = dv * x + v;
    v = v * x + *it;
  }
  if (deriv) *deriv = dv;
  return v;
}

}  // namespace

std::vector<cplx> polynomial_roots(std::vector<cplx> coeffs) {
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) invalid("zero polynomial has no roots");
  while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-14 * scale) coeffs.pop_back();
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg <= 0) return {};
  if (deg == 1) return {-coeffs[0] / coeffs[1]};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) numerical("companion eigenvalue solve failed");

  std::vector<cplx> roots(deg);
  for (int i = 0; i < deg; ++i) {
    cplx x = solver.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      cplx d;
      const cplx v = horner(coeffs, x, &d);
      if (d == cplx(0.0)) break;
      const cplx step = v / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      if (std::abs(step) > 1e-3 * (1.0 + std::abs(x))) break;
      x -= step;
    }
    roots[i] = x;
  }
  return roots;
}

}  // namespace curvecheb
