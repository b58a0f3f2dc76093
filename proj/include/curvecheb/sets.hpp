#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "curvecheb/curve.hpp"
#include "curvecheb/poly.hpp"

namespace curvecheb {

struct Point {
  cplx z1;
  cplx z2;
};

/// {z in A : |z1| <= r}; sampled on |z1| = r.
struct Z1Disk {
  double r = 1.0;
};
/// {z in A : z2 in [lo, hi]}, every branch.
struct Z2Interval {
  double lo = -1.0;
  double hi = 1.0;
};
/// {z in A : |v1| = r1, |v2| = r2} on a degree-2 curve.
struct AbsV1V2Torus {
  double r1 = 0.5;
  double r2 = 0.5;
};
/// A intersected with the bidisk {|z1| <= r1, |z2| <= r2}; sampled on its
/// distinguished boundary.
struct BidiskTrace {
  double r1 = 1.0;
  double r2 = 1.0;
};
/// Every branch of A above the listed z1 values.
struct ParamCurve {
  std::vector<cplx> z1_values;
};
/// Explicit points on A.
struct PointCloud {
  std::vector<Point> points;
};

using SetShape = std::variant<Z1Disk, Z2Interval, AbsV1V2Torus, BidiskTrace, ParamCurve, PointCloud>;

struct SetDescriptor {
  SetShape shape;
  /// Size of the parameter grid (angles, interval nodes).
  int resolution = 1024;

  void validate() const;
  std::string kind() const;
  std::string describe() const;
};

class SampledSet {
 public:
  SampledSet(std::vector<Point> points, SetDescriptor descriptor, double max_residual)
      : points_(std::move(points)), descriptor_(std::move(descriptor)), max_residual_(max_residual) {}

  const std::vector<Point>& points() const { return points_; }
  const SetDescriptor& descriptor() const { return descriptor_; }
  double max_residual() const { return max_residual_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Point> points_;
  SetDescriptor descriptor_;
  double max_residual_;
};

/// Residual tolerance for a point to count as lying on the curve.
double on_curve_tolerance(const Curve& curve, const Point& z);

SampledSet sample(const Curve& curve, const SetDescriptor& desc);

/// max |p| over the samples.
double sup_norm(const BivarPoly& p, const SampledSet& K);

/// Whitespace table: re z1, im z1, re z2, im z2 per line; '#' starts a comment.
std::vector<Point> read_point_cloud(std::istream& in);
void write_point_cloud(std::ostream& out, const std::vector<Point>& points);

}  // namespace curvecheb
