#include "curvecheb/sets.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "curvecheb/error.hpp"

namespace curvecheb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxRetries = 3;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Roots of P along one coordinate with the other fixed; nullopt when two
/// roots nearly coincide (a branch point is too close).
std::optional<std::vector<cplx>> lift(const BivarPoly& P, cplx fixed, bool solve_for_z2) {
  int top = 0;
  for (const auto& [m, _] : P.terms()) top = std::max(top, solve_for_z2 ? m.b : m.a);
  std::vector<cplx> coeffs(top + 1, 0.0);
  for (const auto& [m, c] : P.terms()) {
    const int var = solve_for_z2 ? m.b : m.a;
    const int other = solve_for_z2 ? m.a : m.b;
    coeffs[var] += c * ipow(fixed, other);
  }
  auto roots = polynomial_roots(coeffs);
  double rmax = 0.0;
  for (const auto& r : roots) rmax = std::max(rmax, std::abs(r));
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < 1e-6 * (1.0 + rmax)) return std::nullopt;
  std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return roots;
}

/// Lifts at param(t), retrying at t shifted by half steps.
template <class ParamFn>
std::vector<cplx> lift_with_retry(const BivarPoly& P, ParamFn param, double t, double half_step,
                                  bool solve_for_z2, cplx* used) {
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    const cplx fixed = param(t + attempt * half_step);
    if (auto roots = lift(P, fixed, solve_for_z2)) {
      *used = fixed;
      return *roots;
    }
  }
  numerical("root lifting failed near a branch point after " + std::to_string(kMaxRetries) +
            " retries");
}

void append_circle(const Curve& curve, double radius, int n, bool circle_in_z1,
                   std::optional<double> other_bound, std::vector<Point>& out) {
  const double step = 2.0 * kPi / n;
  auto param = [radius](double t) { return std::polar(radius, t); };
  for (int i = 0; i < n; ++i) {
    cplx fixed;
    const auto roots = lift_with_retry(curve.defining(), param, i * step, 0.5 * step, circle_in_z1, &fixed);
    for (const auto& r : roots) {
      if (other_bound && std::abs(r) > *other_bound * (1.0 + 1e-12)) continue;
      out.push_back(circle_in_z1 ? Point{fixed, r} : Point{r, fixed});
    }
  }
}

std::vector<Point> sample_interval(const Curve& curve, const Z2Interval& s, int n) {
  const double mid = 0.5 * (s.lo + s.hi), half = 0.5 * (s.hi - s.lo);
  // Chebyshev-Lobatto nodes, endpoints included.
  auto param = [&](double t) { return cplx(mid + half * std::cos(t), 0.0); };
  const double step = kPi / (n - 1);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    cplx fixed;
    const double half_step = (i == n - 1 ? -0.5 : 0.5) * step;
    const auto roots = lift_with_retry(curve.defining(), param, i * step, half_step, false, &fixed);
    for (const auto& r : roots) out.push_back({r, fixed});
  }
  return out;
}

std::vector<Point> sample_torus(const Curve& curve, const AbsV1V2Torus& s, int n) {
  if (curve.degree() != 2) invalid("AbsV1V2Torus requires a curve of degree 2");
  curve.require_directional("AbsV1V2Torus sampling");
  const BivarPoly& v1 = curve.v(1);
  const BivarPoly& v2 = curve.v(2);
  const cplx alpha = v1.coeff(1, 0), beta = v1.coeff(0, 1);
  if (std::abs(beta) == 0.0) invalid("AbsV1V2Torus: v1 does not involve z2");
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    const cplx w = std::polar(s.r1, 2.0 * kPi * i / n);
    // Restrict P to the line v1 = w, z1 = t; P is quadratic in t.
    auto f = [&](cplx t) { return curve.defining()(t, (w - alpha * t) / beta); };
    const cplx f0 = f(0.0), fp = f(1.0), fm = f(-1.0);
    const std::vector<cplx> coeffs{f0, 0.5 * (fp - fm), 0.5 * (fp + fm) - f0};
    for (const auto& t : polynomial_roots(coeffs)) {
      const Point z{t, (w - alpha * t) / beta};
      if (std::abs(std::abs(v2(z.z1, z.z2)) - s.r2) <= 1e-8 * std::max(1.0, s.r2)) out.push_back(z);
    }
  }
  return out;
}

void dedupe(std::vector<Point>& pts) {
  std::vector<Point> kept;
  kept.reserve(pts.size());
  for (const auto& p : pts) {
    const double tol = 1e-12 * (1.0 + std::abs(p.z1) + std::abs(p.z2));
    bool dup = false;
    for (const auto& q : kept)
      if (std::abs(p.z1 - q.z1) <= tol && std::abs(p.z2 - q.z2) <= tol) {
        dup = true;
        break;
      }
    if (!dup) kept.push_back(p);
  }
  pts = std::move(kept);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

}  // namespace

void SetDescriptor::validate() const {
  if (resolution < 16) invalid("resolution must be >= 16");
  std::visit(overloaded{
                 [](const Z1Disk& s) {
                   if (!(s.r > 0)) invalid("Z1Disk radius must be positive");
                 },
                 [](const Z2Interval& s) {
                   if (!(s.lo < s.hi)) invalid("Z2Interval requires lo < hi");
                 },
                 [](const AbsV1V2Torus& s) {
                   if (!(s.r1 > 0 && s.r2 > 0)) invalid("AbsV1V2Torus radii must be positive");
                 },
                 [](const BidiskTrace& s) {
                   if (!(s.r1 > 0 && s.r2 > 0)) invalid("BidiskTrace radii must be positive");
                 },
                 [](const ParamCurve& s) {
                   if (s.z1_values.empty()) invalid("ParamCurve needs at least one z1 value");
                 },
                 [](const PointCloud& s) {
                   if (s.points.empty()) invalid("PointCloud needs at least one point");
                 },
             },
             shape);
}

std::string SetDescriptor::kind() const {
  return std::visit(overloaded{
                        [](const Z1Disk&) { return std::string("Z1Disk"); },
                        [](const Z2Interval&) { return std::string("Z2Interval"); },
                        [](const AbsV1V2Torus&) { return std::string("AbsV1V2Torus"); },
                        [](const BidiskTrace&) { return std::string("BidiskTrace"); },
                        [](const ParamCurve&) { return std::string("ParamCurve"); },
                        [](const PointCloud&) { return std::string("PointCloud"); },
                    },
                    shape);
}

std::string SetDescriptor::describe() const {
  const std::string res = ", resolution=" + std::to_string(resolution);
  return std::visit(
      overloaded{
          [&](const Z1Disk& s) { return "Z1Disk(r=" + fmt(s.r) + res + ")"; },
          [&](const Z2Interval& s) { return "Z2Interval(lo=" + fmt(s.lo) + ", hi=" + fmt(s.hi) + res + ")"; },
          [&](const AbsV1V2Torus& s) { return "AbsV1V2Torus(r1=" + fmt(s.r1) + ", r2=" + fmt(s.r2) + res + ")"; },
          [&](const BidiskTrace& s) { return "BidiskTrace(r1=" + fmt(s.r1) + ", r2=" + fmt(s.r2) + res + ")"; },
          [](const ParamCurve& s) { return "ParamCurve(" + std::to_string(s.z1_values.size()) + " values)"; },
          [](const PointCloud& s) { return "PointCloud(" + std::to_string(s.points.size()) + " points)"; },
      },
      shape);
}

double on_curve_tolerance(const Curve& curve, const Point& z) {
  const double r = std::max(std::abs(z.z1), std::abs(z.z2));
  return 1e-10 * (1.0 + std::pow(r, curve.degree())) * std::max(1.0, curve.defining().max_abs_coeff());
}

SampledSet sample(const Curve& curve, const SetDescriptor& desc) {
  desc.validate();
  const int n = desc.resolution;
  std::vector<Point> pts = std::visit(
      overloaded{
          [&](const Z1Disk& s) {
            std::vector<Point> out;
            append_circle(curve, s.r, n, true, std::nullopt, out);
            return out;
          },
          [&](const Z2Interval& s) { return sample_interval(curve, s, n); },
          [&](const AbsV1V2Torus& s) { return sample_torus(curve, s, n); },
          [&](const BidiskTrace& s) {
            std::vector<Point> out;
            append_circle(curve, s.r1, n, true, s.r2, out);
            append_circle(curve, s.r2, n, false, s.r1, out);
            return out;
          },
          [&](const ParamCurve& s) {
            std::vector<Point> out;
            for (const auto& z1 : s.z1_values) {
              auto roots = lift(curve.defining(), z1, true);
              if (!roots) numerical("ParamCurve value lies too close to a branch point");
              for (const auto& r : *roots) out.push_back({z1, r});
            }
            return out;
          },
          [&](const PointCloud& s) { return s.points; },
      },
      desc.shape);

  dedupe(pts);
  if (pts.empty()) invalid("empty set: " + desc.describe());
  double max_res = 0.0;
  for (const auto& z : pts) {
    const double res = std::abs(curve.defining()(z.z1, z.z2));
    if (res > on_curve_tolerance(curve, z))
      invalid("sample point off the curve (|P| = " + fmt(res) + ") in " + desc.describe());
    max_res = std::max(max_res, res);
  }
  return SampledSet(std::move(pts), desc, max_res);
}

double sup_norm(const BivarPoly& p, const SampledSet& K) {
  double m = 0.0;
  for (const auto& z : K.points()) m = std::max(m, std::abs(p(z.z1, z.z2)));
  return m;
}

std::vector<Point> read_point_cloud(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double v[4];
    int got = 0;
    while (got < 4 && ls >> v[got]) ++got;
    if (got == 0 && ls.eof()) continue;
    std::string extra;
    if (got != 4 || (ls >> extra))
      invalid("point cloud line " + std::to_string(lineno) + ": expected four numbers");
    pts.push_back({{v[0], v[1]}, {v[2], v[3]}});
  }
  return pts;
}

void write_point_cloud(std::ostream& out, const std::vector<Point>& points) {
  out << "# re_z1\tim_z1\tre_z2\tim_z2\n";
  out << std::setprecision(17);
  for (const auto& p : points)
    out << p.z1.real() << '\t' << p.z1.imag() << '\t' << p.z2.real() << '\t' << p.z2.imag() << '\n';
}

}  // namespace curvecheb
