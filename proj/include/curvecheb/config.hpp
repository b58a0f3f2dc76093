#pragma once

#include <optional>
#include <string>

#include "curvecheb/chebyshev.hpp"
#include "curvecheb/curve.hpp"
#include "curvecheb/extremal.hpp"
#include "curvecheb/sets.hpp"

namespace curvecheb {

inline constexpr int kConfigSchema = 1;

/// One experiment. JSON layout (every field but "curve" and "set" optional):
///
///   {"schema": 1,
///    "curve": {"terms": [{"a": 2, "b": 0, "re": 1, "im": 0}, ...]}
///           | {"file": "curve.json"} | {"name": "hyperbola"}
///           | {"name": "a_eps", "eps": 0.1} | {"name": "random", "degree": 3, "seed": 7},
///    "relaxed": false,
///    "set": {"kind": "Z1Disk", "r": 1.3} | {"kind": "Z2Interval", "lo": -1, "hi": 1}
///         | {"kind": "AbsV1V2Torus", "r1": 0.5, "r2": 0.5} | {"kind": "BidiskTrace", "r1": 1, "r2": 1}
///         | {"kind": "ParamCurve", "z1": [[re, im], ...]}
///         | {"kind": "PointCloud", "points": [[re1, im1, re2, im2], ...]} | {"kind": "PointCloud", "file": "pts.txt"},
///    "resolution": 1024, "n_max": 16, "seed": 0, "out": "out",
///    "solver": {"max_iter": 500, "lawson_iter": 40, "tol": 1e-8, "gamma": 1, "damped_gamma": 0.5},
///    "class": "MQ:v1", "family": "Vk", "k": 1,
///    "tolerance_override": 0.0}
///
/// Relative paths are resolved against the config file's directory.
struct RunConfig {
  int schema = kConfigSchema;
  BivarPoly curve;
  bool relaxed = false;
  SetDescriptor set;
  int resolution = 1024;
  int n_max = 16;
  SolverOptions solver;
  unsigned long long seed = 0;
  std::string out_dir = "out";
  std::string class_spec = "MQ:v1";
  ExtremalFamily family = ExtremalFamily::Vk;
  int k = 1;
  /// Replaces every verification tolerance when set.
  std::optional<double> tolerance_override;

  void validate() const;
};

RunConfig parse_config(const std::string& json_text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);
/// Canonical JSON: fixed key order, curve terms sorted by (a + b, b), shortest
/// round-trip doubles.
std::string dump_config(const RunConfig& cfg);

/// {"terms": [...]} sorted by (a + b, b).
std::string dump_curve(const BivarPoly& P);
BivarPoly parse_curve(const std::string& json_text);

/// Class syntax: MQ:<f>, MRQ:<f>,<f>, Z:<k>, Mz1jVk:<j>,<k>, TildeMl:<l>,<j>,
/// prefix:S | prefix:C, where <f> is z1, z2, 1 or v<k>.
ClassSpec parse_class(const Curve& curve, const std::string& text);

}  // namespace curvecheb
