#include "curvecheb/basis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <utility>

#include "curvecheb/error.hpp"

namespace curvecheb {

std::string to_string(BasisId id) { return id == BasisId::S ? "S" : "C"; }

BasisId basis_from_string(const std::string& s) {
  if (s == "S" || s == "s") return BasisId::S;
  if (s == "C" || s == "c") return BasisId::C;
  invalid("unknown basis '" + s + "' (expected S or C)");
}

namespace {

/// (degree, position within the degree block) of a 1-based index.
std::pair<int, int> locate(const Curve& curve, int index) {
  if (index < 1) invalid("basis index must be >= 1");
  int m = 0, remaining = index - 1;
  while (remaining >= basis_block_size(curve, m)) {
    remaining -= basis_block_size(curve, m);
    ++m;
  }
  return {m, remaining};
}

/// Standard monomials of degree m in increasing z2-power.
std::vector<Monomial> standard_monomials(const Curve& curve, int m) {
  std::vector<Monomial> out;
  const Monomial lm = curve.reduction_monomial();
  for (int b = 0; b <= m; ++b) {
    const Monomial mono{m - b, b};
    if (!lm.divides(mono)) out.push_back(mono);
  }
  return out;
}

BivarPoly reduced_power(const Curve& curve, const BivarPoly& base, int n) {
  BivarPoly r = BivarPoly::constant(1.0);
  for (int i = 0; i < n; ++i) r = curve.normal_form(r * base);
  return r;
}

}  // namespace

cplx BasisElement::eval(const Curve& curve, cplx z1, cplx z2) const {
  cplx val = ipow(z1, z1pow) * ipow(z2, z2pow);
  if (vindex > 0) val *= ipow(curve.v(vindex)(z1, z2), vpow);
  return val;
}

std::string BasisElement::label() const {
  std::string s;
  auto factor = [&s](const std::string& name, int p) {
    if (p == 0) return;
    if (!s.empty()) s += "*";
    s += name;
    if (p > 1) s += "^" + std::to_string(p);
  };
  factor("z1", z1pow);
  factor("z2", z2pow);
  if (vindex > 0) factor("v" + std::to_string(vindex), vpow);
  return s.empty() ? "1" : s;
}

int basis_block_size(const Curve& curve, int m) {
  if (m < 0) return 0;
  return m < curve.degree() ? m + 1 : curve.degree();
}

int basis_count_to_degree(const Curve& curve, int n) {
  int total = 0;
  for (int m = 0; m <= n; ++m) total += basis_block_size(curve, m);
  return total;
}

long long basis_degree_sum(const Curve& curve, int n) {
  long long total = 0;
  for (int m = 0; m <= n; ++m) total += static_cast<long long>(m) * basis_block_size(curve, m);
  return total;
}

int basis_degree_of(const Curve& curve, int index) { return locate(curve, index).first; }

BasisElement basis_element(const Curve& curve, BasisId id, int index) {
  const auto [m, pos] = locate(curve, index);
  const int d = curve.degree();
  BasisElement e;
  e.basis = id;
  e.index = index;
  e.degree = m;
  if (id == BasisId::S) {
    const Monomial mono = standard_monomials(curve, m).at(pos);
    e.z1pow = mono.a;
    e.z2pow = mono.b;
    e.poly = BivarPoly::monomial(mono.a, mono.b);
    return e;
  }
  curve.require_directional("basis C");
  if (m <= d - 2) {
    e.z1pow = m - pos;
    e.z2pow = pos;
    e.poly = BivarPoly::monomial(e.z1pow, e.z2pow);
    return e;
  }
  e.vpow = m / (d - 1);
  e.z1pow = m % (d - 1);
  e.vindex = pos + 1;
  e.poly = curve.normal_form(BivarPoly::monomial(e.z1pow, 0) *
                             reduced_power(curve, curve.v(e.vindex), e.vpow));
  return e;
}

std::vector<BasisElement> basis_enumerate(const Curve& curve, BasisId id, int count) {
  if (count < 1) invalid("basis count must be >= 1");
  std::vector<BasisElement> out;
  out.reserve(count);
  for (int i = 1; i <= count; ++i) out.push_back(basis_element(curve, id, i));
  return out;
}

std::vector<cplx> expand_in_basis(const Curve& curve, const BivarPoly& p, BasisId id) {
  BivarPoly residual = curve.normal_form(p);
  if (residual.is_zero()) return {};
  const double scale = residual.max_abs_coeff();
  const int top = residual.degree();
  const int total = basis_count_to_degree(curve, top);
  std::vector<cplx> coeffs(total, 0.0);
  const auto elements = basis_enumerate(curve, id, total);

  for (int m = top; m >= 0; --m) {
    const auto monos = standard_monomials(curve, m);
    const int s = static_cast<int>(monos.size());
    const int first = basis_count_to_degree(curve, m - 1);
    Eigen::MatrixXcd H(s, s);
    Eigen::VectorXcd rhs(s);
    for (int i = 0; i < s; ++i) {
      rhs(i) = residual.coeff(monos[i].a, monos[i].b);
      for (int j = 0; j < s; ++j) H(i, j) = elements[first + j].poly.coeff(monos[i].a, monos[i].b);
    }
    if (rhs.norm() == 0.0) continue;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(H);
    if (!lu.isInvertible()) numerical("singular change-of-basis block at degree " + std::to_string(m));
    const Eigen::VectorXcd x = lu.solve(rhs);
    for (int j = 0; j < s; ++j) {
      coeffs[first + j] = x(j);
      residual -= elements[first + j].poly * x(j);
    }
  }
  if (residual.max_abs_coeff() > 1e-8 * scale)
    numerical("basis expansion left a residual of " + std::to_string(residual.max_abs_coeff()));
  return coeffs;
}

BivarPoly reconstruct(const Curve& curve, std::span<const cplx> coeffs, BasisId id) {
  BivarPoly p;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == cplx(0.0)) continue;
    p += basis_element(curve, id, static_cast<int>(i) + 1).poly * coeffs[i];
  }
  return p;
}

CjkTable cjk_table(const Curve& curve) {
  curve.require_directional("c_jk table");
  const int d = curve.degree();
  const int first = basis_count_to_degree(curve, d - 2);
  CjkTable table;
  for (int j = 0; j < d; ++j) {
    const auto coeffs = expand_in_basis(curve, BivarPoly::monomial(j, d - 1 - j), BasisId::C);
    std::vector<cplx> row(d);
    for (int k = 0; k < d; ++k) {
      row[k] = coeffs.at(first + k);
      if (std::abs(row[k]) <= 1e-10)
        invalid("directional coefficient c_" + std::to_string(j) + std::to_string(k + 1) +
                " vanishes numerically; the curve is degenerate");
    }
    table.entries.push_back(std::move(row));
  }
  return table;
}

BivarPoly polyprop_residual(const Curve& curve, const BivarPoly& q, int k) {
  curve.require_directional("polyprop residual");
  const BivarPoly qn = curve.normal_form(q);
  if (qn.is_zero()) invalid("q must be nonzero in the coordinate ring");
  const int n = qn.degree();
  const cplx lead = leading_part(qn)(1.0, curve.direction(k));
  const BivarPoly& v = curve.v(k);
  return curve.normal_form(qn * v - BivarPoly::monomial(n, 0, lead) * v);
}

}  // namespace curvecheb
