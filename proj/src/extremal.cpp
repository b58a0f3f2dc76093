#include "curvecheb/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "curvecheb/error.hpp"

namespace curvecheb {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

/// Inverse Joukowski map, branch with |h| >= 1.
cplx joukowski_inverse(cplx z) {
  const cplx s = std::sqrt(z * z - 1.0);
  const cplx a = z + s, b = z - s;
  return std::abs(a) >= std::abs(b) ? a : b;
}

/// The constant c when normal_form(p) is constant, else nullopt.
std::optional<cplx> constant_on_curve(const Curve& curve, const BivarPoly& p) {
  const BivarPoly nf = curve.normal_form(p);
  if (nf.is_zero()) return cplx(0.0);
  const double scale = std::max(1.0, nf.max_abs_coeff());
  for (const auto& [m, c] : nf.terms())
    if (m.degree() > 0 && std::abs(c) > 1e-12 * scale) return std::nullopt;
  return nf.coeff(0, 0);
}

bool is_relaxed_hyperbola(const Curve& curve) {
  if (!curve.relaxed() || curve.degree() != 2) return false;
  const auto& P = curve.defining();
  const cplx c11 = P.coeff(1, 1);
  if (c11 == cplx(0.0)) return false;
  for (const auto& [m, c] : P.terms())
    if (!(m.a == 1 && m.b == 1) && !(m.a == 0 && m.b == 0) && std::abs(c) > 1e-14 * std::abs(c11)) return false;
  return true;
}

}  // namespace

std::string RobinDirection::label() const {
  std::ostringstream os;
  if (std::abs(a) > 0) {
    cplx lam = b / a;
    if (lam.real() == 0.0) lam.real(0.0);
    if (lam.imag() == 0.0) lam.imag(0.0);
    os << "lambda = " << lam.real();
    if (lam.imag() != 0.0) os << (lam.imag() < 0 ? " - " : " + ") << std::abs(lam.imag()) << "i";
  } else {
    os << "[0 : 1]";
  }
  return os.str();
}

std::vector<RobinDirection> robin_directions(const Curve& curve) {
  std::vector<RobinDirection> out;
  const int d = curve.degree();
  if (curve.has_directions()) {
    for (int k = 1; k <= d; ++k) out.push_back({1.0, curve.direction(k), curve.v(k)});
    return out;
  }
  // Points [a : b] where the leading form vanishes.
  const BivarPoly h = homogeneous_part(curve.defining(), d);
  std::vector<cplx> coeffs(d + 1);
  for (int b = 0; b <= d; ++b) coeffs[b] = h.coeff(d - b, b);
  const double scale = h.max_abs_coeff();
  int top = d;
  while (top > 0 && std::abs(coeffs[top]) <= 1e-12 * scale) --top;
  if (d - top > 1) invalid("leading form has a repeated factor at [0 : 1]");
  std::vector<cplx> roots = polynomial_roots(std::vector<cplx>(coeffs.begin(), coeffs.begin() + top + 1));
  for (const auto& r : roots) out.push_back({1.0, r, {}});
  if (top < d) out.push_back({0.0, 1.0, {}});
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (std::abs(out[i].a * out[j].b - out[i].b * out[j].a) < 1e-8)
        invalid("leading form has a repeated factor");
  for (std::size_t k = 0; k < out.size(); ++k) {
    BivarPoly v = BivarPoly::constant(1.0);
    cplx norm = 1.0;
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (j == k) continue;
      // Linear form vanishing at [a_j : b_j].
      const BivarPoly L = BivarPoly::monomial(1, 0, out[j].b) - BivarPoly::monomial(0, 1, out[j].a);
      norm *= L(out[k].a, out[k].b);
      v = v * L;
    }
    out[k].v = v * (1.0 / norm);
  }
  return out;
}

double robin_of_poly(const Curve& curve, const BivarPoly& p, int k) {
  const auto dirs = robin_directions(curve);
  if (k < 1 || k > static_cast<int>(dirs.size())) invalid("direction index out of range");
  const BivarPoly nf = curve.normal_form(p);
  if (nf.is_zero()) invalid("robin_of_poly needs a nonzero polynomial");
  const int n = nf.degree();
  if (n == 0) return kMinusInf;
  const cplx val = leading_part(nf)(dirs[k - 1].a, dirs[k - 1].b);
  const double mod = std::abs(val);
  if (mod <= 1e-14 * nf.max_abs_coeff()) return kMinusInf;
  return std::log(mod) / n;
}

RobinReport robin_constants(const Curve& curve, const SampledSet& K, int max_degree, const SolverOptions& opts,
                            double strict_tol) {
  const auto dirs = robin_directions(curve);
  RobinReport rep;
  rep.strict_tol = strict_tol;
  std::vector<double> T;
  std::vector<cplx> slopes;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    RobinEntry e;
    e.k = static_cast<int>(i) + 1;
    e.direction = dirs[i];
    std::vector<ChebSolve> solves;
    e.estimate = estimate_class(curve, ClassMQ{dirs[i].v}, K, max_degree, opts, &solves);
    e.rho = -std::log(e.estimate.estimate);
    const ChebSolve* last = nullptr;
    for (const auto& s : solves)
      if (s.ok()) last = &s;
    if (last == nullptr) {
      e.estimate.reliable = false;
      e.rho_poly = e.poly_gap = e.estimate_gap = kNaN;
    } else {
      e.n = last->n();
      e.tn = last->tn;
      e.rho_poly = robin_of_poly(curve, last->minimizer * (1.0 / last->norm), e.k);
      e.poly_gap = std::abs(e.rho_poly + std::log(e.tn));
      e.estimate_gap = std::abs(e.rho_poly - e.rho);
    }
    T.push_back(e.estimate.estimate);
    slopes.push_back(std::abs(dirs[i].a) > 0 ? dirs[i].b / dirs[i].a : cplx(0.0));
    rep.entries.push_back(std::move(e));
  }
  rep.ordering = descending_labels(T, slopes);
  rep.strict = true;
  for (std::size_t i = 1; i < rep.ordering.size(); ++i) {
    const double lo = rep.entries[rep.ordering[i - 1] - 1].rho;
    const double hi = rep.entries[rep.ordering[i] - 1].rho;
    if (!(hi - lo > strict_tol)) rep.strict = false;
  }
  return rep;
}

std::string to_string(ExtremalFamily f) { return f == ExtremalFamily::Vk ? "Vk" : "VkTilde"; }

ExtremalFamily extremal_family_from_string(const std::string& s) {
  if (s == "Vk") return ExtremalFamily::Vk;
  if (s == "VkTilde") return ExtremalFamily::VkTilde;
  invalid("unknown extremal family '" + s + "' (expected Vk or VkTilde)");
}

ExtremalApprox extremal_build(const Curve& curve, const SampledSet& K, ExtremalFamily family, int k, int n,
                              const SolverOptions& opts) {
  const int d = curve.degree();
  ExtremalApprox out;
  out.family = family;
  out.k = k;
  out.n = n;
  if (family == ExtremalFamily::Vk) {
    curve.require_directional("family Vk");
    if (k < 1 || k > d) invalid("Vk needs 1 <= k <= d (k = " + std::to_string(k) + ")");
    const int l = n / (d - 1), j = n % (d - 1);
    if (l < 1) invalid("Vk needs n >= d-1 (n = " + std::to_string(n) + ")");
    out.cheb = chebyshev_solve(curve, ClassMz1jVk{j, k}, l, K, opts);
  } else {
    if (k < 0 || k > d - 1) invalid("VkTilde needs 0 <= k <= d-1 (k = " + std::to_string(k) + ")");
    if (n - k < 1) invalid("VkTilde needs n > k (n = " + std::to_string(n) + ")");
    out.cheb = chebyshev_solve(curve, ClassZk{k}, n - k, K, opts);
  }
  if (!out.cheb.ok()) numerical("extremal solve failed: " + out.cheb.error);
  out.normalizer = out.cheb.norm;
  return out;
}

std::vector<double> extremal_eval(const Curve& curve, const ExtremalApprox& approx, const std::vector<Point>& pts) {
  std::vector<double> out;
  out.reserve(pts.size());
  const double deg = approx.cheb.total_degree();
  for (const auto& z : pts) {
    if (std::abs(curve.defining()(z.z1, z.z2)) > on_curve_tolerance(curve, z)) {
      out.push_back(kNaN);
      continue;
    }
    const double m = std::abs(approx.cheb.eval(curve, z.z1, z.z2));
    out.push_back(m > 0 ? std::log(m / approx.normalizer) / deg : kMinusInf);
  }
  return out;
}

bool has_oracle(const Curve& curve, const SetDescriptor& desc) {
  return std::visit(overloaded{
                        [&](const Z1Disk&) { return curve.has_directions(); },
                        [&](const Z2Interval&) { return curve.has_directions(); },
                        [&](const AbsV1V2Torus& s) {
                          if (curve.degree() != 2 || !curve.has_directions()) return false;
                          const auto c = constant_on_curve(curve, curve.v(1) * curve.v(2));
                          return c && std::abs(std::abs(*c) - s.r1 * s.r2) <= 1e-9 * s.r1 * s.r2;
                        },
                        [&](const BidiskTrace&) { return is_relaxed_hyperbola(curve); },
                        [](const ParamCurve&) { return false; },
                        [](const PointCloud&) { return false; },
                    },
                    desc.shape);
}

std::vector<double> oracle_eval(const Curve& curve, const SetDescriptor& desc, const std::vector<Point>& pts) {
  if (!has_oracle(curve, desc)) invalid("no oracle for " + desc.describe());
  std::vector<double> out;
  out.reserve(pts.size());
  for (const auto& z : pts) {
    out.push_back(std::visit(
        overloaded{
            [&](const Z1Disk& s) { return log_plus(std::abs(z.z1) / s.r); },
            [&](const Z2Interval& s) {
              const cplx w = (2.0 * z.z2 - (s.lo + s.hi)) / (s.hi - s.lo);
              return std::max(0.0, std::log(std::abs(joukowski_inverse(w))));
            },
            [&](const AbsV1V2Torus& s) {
              return std::max(log_plus(std::abs(curve.v(1)(z.z1, z.z2)) / s.r1),
                              log_plus(std::abs(curve.v(2)(z.z1, z.z2)) / s.r2));
            },
            [&](const BidiskTrace& s) {
              return std::max(log_plus(std::abs(z.z1) / s.r1), log_plus(std::abs(z.z2) / s.r2));
            },
            [](const auto&) { return kNaN; },
        },
        desc.shape));
  }
  return out;
}

std::vector<Point> probe_grid(const Curve& curve, const std::vector<double>& radii, int angles) {
  if (radii.empty() || angles < 1) invalid("probe grid needs radii and at least one angle");
  std::vector<cplx> z1;
  // Golden-angle offsets keep the probes off symmetry lines of the examples.
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < radii.size(); ++i)
    for (int j = 0; j < angles; ++j)
      z1.push_back(std::polar(radii[i], 2.0 * std::numbers::pi * j / angles + golden * (i + 1)));
  return sample(curve, {ParamCurve{z1}, std::max(16, static_cast<int>(z1.size()))}).points();
}

double VkMaxReport::max_gap() const {
  double g = 0.0;
  for (const auto& r : rows) g = std::max(g, r.gap);
  return g;
}

double VkMaxReport::max_gap_tilde() const {
  double g = 0.0;
  for (const auto& r : rows) g = std::max(g, r.gap_tilde);
  return g;
}

VkMaxReport vk_max(const Curve& curve, const SampledSet& K, int n, const std::vector<Point>& pts,
                   const RobinReport& robin, const SolverOptions& opts) {
  VkMaxReport rep;
  rep.n = n;
  rep.tilde_hypothesis = robin.strict;
  const int d = curve.degree();
  if (curve.has_directions())
    for (int k = 1; k <= d; ++k) rep.v.push_back(extremal_build(curve, K, ExtremalFamily::Vk, k, n, opts));
  for (int k = 0; k <= d - 1; ++k)
    rep.v_tilde.push_back(extremal_build(curve, K, ExtremalFamily::VkTilde, k, n, opts));

  auto family_max = [&](const std::vector<ExtremalApprox>& fam) {
    std::vector<double> m(pts.size(), fam.empty() ? kNaN : kMinusInf);
    for (const auto& a : fam) {
      const auto vals = extremal_eval(curve, a, pts);
      for (std::size_t i = 0; i < pts.size(); ++i) m[i] = std::isnan(vals[i]) ? kNaN : std::max(m[i], vals[i]);
    }
    return m;
  };
  const auto vm = family_max(rep.v);
  const auto vt = family_max(rep.v_tilde);
  rep.has_oracle = has_oracle(curve, K.descriptor());
  const auto orc = rep.has_oracle ? oracle_eval(curve, K.descriptor(), pts) : std::vector<double>(pts.size(), kNaN);
  for (std::size_t i = 0; i < pts.size(); ++i)
    rep.rows.push_back({pts[i], vm[i], vt[i], orc[i], std::abs(vm[i] - orc[i]), std::abs(vt[i] - orc[i])});
  return rep;
}

void write_vk_grid(std::ostream& out, const VkMaxReport& rep) {
  out << "re_z1\tim_z1\tre_z2\tim_z2\tV_max\tV_tilde_max\toracle\tgap\n";
  auto num = [&](double x) -> std::ostream& {
    if (std::isnan(x)) return out << "nan";
    if (std::isinf(x)) return out << (x < 0 ? "-inf" : "inf");
    return out << x;
  };
  const auto prec = out.precision(17);
  for (const auto& r : rep.rows) {
    num(r.z.z1.real()) << '\t';
    num(r.z.z1.imag()) << '\t';
    num(r.z.z2.real()) << '\t';
    num(r.z.z2.imag()) << '\t';
    num(r.v_max) << '\t';
    num(r.v_tilde_max) << '\t';
    num(r.oracle) << '\t';
    num(std::isnan(r.v_max) ? r.gap_tilde : r.gap) << '\n';
  }
  out.precision(prec);
}

}  // namespace curvecheb
