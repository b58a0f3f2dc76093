#include <cstdio>
#include <filesystem>
#include <fstream>

#include "curvecheb/commands.hpp"
#include "curvecheb/config.hpp"
#include "curvecheb/error.hpp"
#include "doctest.h"

using namespace curvecheb;

TEST_CASE("parse a named curve and set") {
  const auto cfg = parse_config(
      R"({"schema": 1, "curve": {"name": "hyperbola"}, "set": {"kind": "Z1Disk", "r": 1.3},
          "n_max": 10, "resolution": 128, "class": "Z:0", "family": "VkTilde", "k": 1})");
  CHECK(max_coeff_distance(cfg.curve, curves::hyperbola()) == 0.0);
  CHECK(cfg.set.kind() == "Z1Disk");
  CHECK(std::get<Z1Disk>(cfg.set.shape).r == 1.3);
  CHECK(cfg.set.resolution == 128);
  CHECK(cfg.n_max == 10);
  CHECK(cfg.class_spec == "Z:0");
  CHECK(cfg.family == ExtremalFamily::VkTilde);
  CHECK_FALSE(cfg.tolerance_override.has_value());
}

TEST_CASE("random curves take the top-level seed by default") {
  const auto a = parse_config(R"({"seed": 7, "curve": {"name": "random", "degree": 3}, "set": {"kind": "Z1Disk", "r": 1}})");
  CHECK(max_coeff_distance(a.curve, curves::random_curve(3, 7)) == 0.0);
  const auto b = parse_config(R"({"curve": {"name": "random", "degree": 3, "seed": 9}, "set": {"kind": "Z1Disk", "r": 1}})");
  CHECK(max_coeff_distance(b.curve, curves::random_curve(3, 9)) == 0.0);
}

TEST_CASE("dump and parse round trip") {
  for (const char* text : {
           R"({"curve": {"name": "a_eps", "eps": 0.125}, "relaxed": true, "set": {"kind": "BidiskTrace", "r1": 1, "r2": 0.5}})",
           R"({"curve": {"name": "random", "degree": 4, "seed": 3}, "set": {"kind": "Z2Interval", "lo": -2, "hi": 0.5},
               "solver": {"max_iter": 200, "tol": 1e-9}, "tolerance_override": 0})",
           R"({"curve": {"name": "hyperbola"}, "set": {"kind": "ParamCurve", "z1": [[0.5, 0.25], [2, -1]]}})",
           R"({"curve": {"name": "hyperbola"}, "set": {"kind": "PointCloud", "points": [[1, 0, 0, 0], [-1, 0, 0, 0]]}})",
       }) {
    const auto cfg = parse_config(text);
    const std::string dumped = dump_config(cfg);
    const auto again = parse_config(dumped);
    CHECK(dump_config(again) == dumped);
    CHECK(max_coeff_distance(again.curve, cfg.curve) == 0.0);
    CHECK(again.set.describe() == cfg.set.describe());
  }
}

TEST_CASE("curve JSON is sorted and round trips exactly") {
  const BivarPoly P = curves::random_curve(3, 11);
  const std::string text = dump_curve(P);
  CHECK(max_coeff_distance(parse_curve(text), P) == 0.0);
  const std::string h = dump_curve(curves::hyperbola());
  CHECK(h.find("\"a\": 0") < h.find("\"a\": 2"));
}

TEST_CASE("relative files resolve against the config directory") {
  const auto dir = std::filesystem::temp_directory_path() / "curvecheb_config_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "curve.json") << dump_curve(curves::hyperbola());
  std::ofstream(dir / "pts.txt") << "# z1 z2\n1 0 0 0\n-1 0 0 0\n";
  std::ofstream(dir / "run.json")
      << R"({"curve": {"file": "curve.json"}, "set": {"kind": "PointCloud", "file": "pts.txt"}})";
  const auto cfg = load_config((dir / "run.json").string());
  CHECK(max_coeff_distance(cfg.curve, curves::hyperbola()) == 0.0);
  CHECK(std::get<PointCloud>(cfg.set.shape).points.size() == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("invalid configs") {
  for (const char* text : {
           "not json",
           R"({"curve": {"name": "hyperbola"}, "set": {"kind": "Z1Disk"}})",
           "[]",
           R"({"set": {"kind": "Z1Disk", "r": 1}})",
           R"({"curve": {"name": "hyperbola"}})",
           R"({"schema": 2, "curve": {"name": "hyperbola"}, "set": {"kind": "Z1Disk", "r": 1}})",
           R"({"curve": {"name": "ellipse"}, "set": {"kind": "Z1Disk", "r": 1}})",
           R"({"curve": {"name": "hyperbola"}, "set": {"kind": "Square"}})",
           R"({"curve": {"name": "hyperbola"}, "set": {"kind": "Z1Disk", "r": -1}})",
           R"({"curve": {"name": "hyperbola"}, "set": {"kind": "Z1Disk", "r": 1}, "resolution": 8})",
           R"({"curve": {"name": "hyperbola"}, "set": {"kind": "Z1Disk", "r": 1}, "n_max": 0})",
           R"({"curve": {"name": "hyperbola"}, "set": {"kind": "Z1Disk", "r": 1}, "family": "Wk"})",
           R"({"curve": {"name": "hyperbola"}, "set": {"kind": "Z1Disk", "r": 1}, "tolerance_override": -1})",
           R"({"curve": {"terms": [{"a": -1, "b": 0, "re": 1, "im": 0}]}, "set": {"kind": "Z1Disk", "r": 1}})",
       }) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_config(text).validate(), Error);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/run.json"), Error);
}

TEST_CASE("class syntax") {
  const Curve C = Curve::create(curves::random_curve(3, 7));
  const auto mq = std::get<ClassMQ>(parse_class(C, "MQ:v2"));
  CHECK(max_coeff_distance(mq.Q, C.v(2)) == 0.0);
  const auto mrq = std::get<ClassMRQ>(parse_class(C, "MRQ:z1,v1"));
  CHECK(max_coeff_distance(mrq.R, BivarPoly::z1()) == 0.0);
  CHECK(std::get<ClassZk>(parse_class(C, "Z:2")).k == 2);
  const auto m = std::get<ClassMz1jVk>(parse_class(C, "Mz1jVk:1,3"));
  CHECK(m.j == 1);
  CHECK(m.k == 3);
  const auto t = std::get<ClassTildeMl>(parse_class(C, "TildeMl:0,2"));
  CHECK(t.l == 0);
  CHECK(t.j == 2);
  CHECK(std::get<ClassBasisPrefix>(parse_class(C, "prefix:C")).basis == BasisId::C);
  for (const char* bad : {"MQ", "MQ:w", "MQ:v4", "MRQ:z1", "Z:x", "Foo:1", "prefix:T"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_class(C, bad), Error);
  }
}

TEST_CASE("verify tolerances and assertion formatting") {
  const auto t = VerifyTolerances::uniform(0.0);
  CHECK(t.equality == 0.0);
  CHECK(t.vanishing == 0.0);
  const std::string line = format_assertion(check_equal("rho", 1.0, 1.0, 0.1));
  CHECK(line.rfind("PASS", 0) == 0);
  CHECK(line.find("rho") != std::string::npos);
  CHECK(format_assertion(check_le("x", 2.0, 1.0, 0.0)).rfind("FAIL", 0) == 0);
}
