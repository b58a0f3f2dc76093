#include "curvecheb/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curvecheb/error.hpp"
#include "json.hpp"

namespace curvecheb {

namespace {

using json = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    invalid(what + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string resolve(const std::string& base, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (std::filesystem::path(base) / p).string();
}

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    invalid(std::string("field '") + key + "': " + e.what());
  }
}

double need_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) invalid(std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

BivarPoly curve_from_terms(const json& terms) {
  if (!terms.is_array() || terms.empty()) invalid("curve terms must be a nonempty array");
  BivarPoly P;
  for (const auto& t : terms) {
    const int a = get(t, "a", -1), b = get(t, "b", -1);
    if (a < 0 || b < 0) invalid("curve term needs nonnegative integer exponents a, b");
    P.add_term({a, b}, cplx(get(t, "re", 0.0), get(t, "im", 0.0)));
  }
  P.prune();
  return P;
}

json terms_to_json(const BivarPoly& P) {
  std::vector<std::pair<Monomial, cplx>> terms(P.terms().begin(), P.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    const int dx = x.first.degree(), dy = y.first.degree();
    return dx != dy ? dx < dy : x.first.b < y.first.b;
  });
  json arr = json::array();
  for (const auto& [m, c] : terms) arr.push_back({{"a", m.a}, {"b", m.b}, {"re", c.real()}, {"im", c.imag()}});
  return arr;
}

BivarPoly curve_from_json(const json& j, const std::string& base, unsigned long long seed) {
  if (!j.is_object()) invalid("curve must be an object");
  if (j.contains("terms")) return curve_from_terms(j.at("terms"));
  if (j.contains("file")) {
    const auto inner = parse_json(read_file(resolve(base, j.at("file").get<std::string>())), "curve file");
    return curve_from_json(inner, base, seed);
  }
  const std::string name = get<std::string>(j, "name", "");
  if (name == "hyperbola") return curves::hyperbola();
  if (name == "a_eps") return curves::a_eps(need_number(j, "eps"));
  if (name == "random") return curves::random_curve(get(j, "degree", 0), get<unsigned long long>(j, "seed", seed));
  invalid("curve needs 'terms', 'file' or a known 'name' (hyperbola, a_eps, random)");
}

SetShape set_from_json(const json& j, const std::string& base) {
  if (!j.is_object()) invalid("set must be an object");
  const std::string kind = get<std::string>(j, "kind", "");
  if (kind == "Z1Disk") return Z1Disk{need_number(j, "r")};
  if (kind == "Z2Interval") return Z2Interval{get(j, "lo", -1.0), get(j, "hi", 1.0)};
  if (kind == "AbsV1V2Torus") return AbsV1V2Torus{need_number(j, "r1"), need_number(j, "r2")};
  if (kind == "BidiskTrace") return BidiskTrace{need_number(j, "r1"), need_number(j, "r2")};
  if (kind == "ParamCurve") {
    ParamCurve s;
    for (const auto& z : j.value("z1", json::array())) {
      if (!z.is_array() || z.size() != 2) invalid("ParamCurve z1 entries are [re, im]");
      s.z1_values.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    return s;
  }
  if (kind == "PointCloud") {
    PointCloud s;
    if (j.contains("file")) {
      std::ifstream in(resolve(base, j.at("file").get<std::string>()));
      if (!in) invalid("cannot open point cloud file");
      s.points = read_point_cloud(in);
    } else {
      for (const auto& p : j.value("points", json::array())) {
        if (!p.is_array() || p.size() != 4) invalid("PointCloud points are [re1, im1, re2, im2]");
        s.points.push_back({cplx(p[0].get<double>(), p[1].get<double>()), cplx(p[2].get<double>(), p[3].get<double>())});
      }
    }
    return s;
  }
  invalid("unknown set kind '" + kind + "'");
}

json set_to_json(const SetShape& shape) {
  return std::visit(overloaded{
                        [](const Z1Disk& s) { return json{{"kind", "Z1Disk"}, {"r", s.r}}; },
                        [](const Z2Interval& s) { return json{{"kind", "Z2Interval"}, {"lo", s.lo}, {"hi", s.hi}}; },
                        [](const AbsV1V2Torus& s) {
                          return json{{"kind", "AbsV1V2Torus"}, {"r1", s.r1}, {"r2", s.r2}};
                        },
                        [](const BidiskTrace& s) { return json{{"kind", "BidiskTrace"}, {"r1", s.r1}, {"r2", s.r2}}; },
                        [](const ParamCurve& s) {
                          json z = json::array();
                          for (const auto& v : s.z1_values) z.push_back({v.real(), v.imag()});
                          return json{{"kind", "ParamCurve"}, {"z1", z}};
                        },
                        [](const PointCloud& s) {
                          json pts = json::array();
                          for (const auto& p : s.points) pts.push_back({p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag()});
                          return json{{"kind", "PointCloud"}, {"points", pts}};
                        },
                    },
                    shape);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

int to_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    invalid("expected an integer, got '" + s + "'");
  }
}

BivarPoly factor_poly(const Curve& curve, const std::string& f) {
  if (f == "z1") return BivarPoly::z1();
  if (f == "z2") return BivarPoly::z2();
  if (f == "1") return BivarPoly::constant(1.0);
  if (f.size() > 1 && f[0] == 'v') {
    const auto dirs = robin_directions(curve);
    const int k = to_int(f.substr(1));
    if (k < 1 || k > static_cast<int>(dirs.size())) invalid("direction index out of range in '" + f + "'");
    return dirs[static_cast<std::size_t>(k - 1)].v;
  }
  invalid("unknown factor '" + f + "' (expected z1, z2, 1 or v<k>)");
}

}  // namespace

void RunConfig::validate() const {
  if (schema != kConfigSchema) invalid("unsupported config schema " + std::to_string(schema));
  if (curve.is_zero()) invalid("config has no curve");
  if (resolution < 16) invalid("resolution must be >= 16");
  if (n_max < 1) invalid("n_max must be >= 1");
  if (solver.max_iter < 1 || solver.lawson_iter < 0) invalid("solver iteration counts must be positive");
  if (!(solver.tol > 0) || !(solver.gamma > 0) || !(solver.damped_gamma > 0))
    invalid("solver tol, gamma and damped_gamma must be positive");
  if (tolerance_override && !(*tolerance_override >= 0)) invalid("tolerance_override must be >= 0");
  if (k < 0) invalid("k must be >= 0");
  set.validate();
}

RunConfig parse_config(const std::string& json_text, const std::string& base_dir) {
  const json j = parse_json(json_text, "config");
  if (!j.is_object()) invalid("config must be a JSON object");
  RunConfig cfg;
  cfg.schema = get(j, "schema", kConfigSchema);
  cfg.seed = get(j, "seed", cfg.seed);
  if (!j.contains("curve")) invalid("config has no curve");
  cfg.curve = curve_from_json(j.at("curve"), base_dir, cfg.seed);
  cfg.relaxed = get(j, "relaxed", false);
  cfg.resolution = get(j, "resolution", cfg.resolution);
  if (!j.contains("set")) invalid("config has no set");
  cfg.set = {set_from_json(j.at("set"), base_dir), cfg.resolution};
  cfg.n_max = get(j, "n_max", cfg.n_max);
  cfg.out_dir = get(j, "out", cfg.out_dir);
  cfg.class_spec = get(j, "class", cfg.class_spec);
  cfg.family = extremal_family_from_string(get<std::string>(j, "family", to_string(cfg.family)));
  cfg.k = get(j, "k", cfg.k);
  if (j.contains("tolerance_override")) cfg.tolerance_override = need_number(j, "tolerance_override");
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    cfg.solver.max_iter = get(s, "max_iter", cfg.solver.max_iter);
    cfg.solver.lawson_iter = get(s, "lawson_iter", cfg.solver.lawson_iter);
    cfg.solver.tol = get(s, "tol", cfg.solver.tol);
    cfg.solver.gamma = get(s, "gamma", cfg.solver.gamma);
    cfg.solver.damped_gamma = get(s, "damped_gamma", cfg.solver.damped_gamma);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  const auto base = std::filesystem::path(path).parent_path().string();
  return parse_config(read_file(path), base.empty() ? "." : base);
}

std::string dump_config(const RunConfig& cfg) {
  json j;
  j["schema"] = cfg.schema;
  j["curve"] = {{"terms", terms_to_json(cfg.curve)}};
  j["relaxed"] = cfg.relaxed;
  j["set"] = set_to_json(cfg.set.shape);
  j["resolution"] = cfg.resolution;
  j["n_max"] = cfg.n_max;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out_dir;
  j["solver"] = {{"max_iter", cfg.solver.max_iter},
                 {"lawson_iter", cfg.solver.lawson_iter},
                 {"tol", cfg.solver.tol},
                 {"gamma", cfg.solver.gamma},
                 {"damped_gamma", cfg.solver.damped_gamma}};
  j["class"] = cfg.class_spec;
  j["family"] = to_string(cfg.family);
  j["k"] = cfg.k;
  if (cfg.tolerance_override) j["tolerance_override"] = *cfg.tolerance_override;
  return j.dump(2) + "\n";
}

std::string dump_curve(const BivarPoly& P) { return json{{"terms", terms_to_json(P)}}.dump(2) + "\n"; }

BivarPoly parse_curve(const std::string& json_text) {
  return curve_from_json(parse_json(json_text, "curve"), ".", 0);
}

ClassSpec parse_class(const Curve& curve, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) invalid("class '" + text + "' needs the form NAME:ARGS");
  const std::string name = text.substr(0, colon);
  const auto args = split(text.substr(colon + 1), ',');
  auto need = [&](std::size_t n) {
    if (args.size() != n) invalid("class " + name + " takes " + std::to_string(n) + " argument(s)");
  };
  if (name == "MQ") {
    need(1);
    return ClassMQ{factor_poly(curve, args[0])};
  }
  if (name == "MRQ") {
    need(2);
    return ClassMRQ{factor_poly(curve, args[0]), factor_poly(curve, args[1])};
  }
  if (name == "Z") {
    need(1);
    return ClassZk{to_int(args[0])};
  }
  if (name == "Mz1jVk") {
    need(2);
    return ClassMz1jVk{to_int(args[0]), to_int(args[1])};
  }
  if (name == "TildeMl") {
    need(2);
    return ClassTildeMl{to_int(args[0]), to_int(args[1])};
  }
  if (name == "prefix") {
    need(1);
    return ClassBasisPrefix{basis_from_string(args[0])};
  }
  invalid("unknown class '" + name + "' (expected MQ, MRQ, Z, Mz1jVk, TildeMl or prefix)");
}

}  // namespace curvecheb
