#include "curvecheb/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curvecheb/error.hpp"
#include "curvecheb/extremal.hpp"
#include "curvecheb/transfinite.hpp"

namespace curvecheb {

namespace {

std::string num(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string num(cplx z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

/// Full precision for tables that are read back.
std::string full(double x) {
  if (x == 0.0) x = 0.0;
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string write_file(const RunConfig& cfg, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(cfg.out_dir);
  const auto path = (std::filesystem::path(cfg.out_dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) invalid("cannot write " + path);
  out << content;
  return path;
}

SampledSet config_samples(const Curve& curve, const RunConfig& cfg) {
  SetDescriptor desc = cfg.set;
  desc.resolution = cfg.resolution;
  return sample(curve, desc);
}

std::string header(const Curve& curve, const RunConfig& cfg) {
  std::ostringstream os;
  os << "curve: " << cfg.curve.to_string() << (curve.relaxed() ? " (relaxed)" : "") << "\n";
  os << "set: " << cfg.set.describe() << "\n";
  os << "n_max: " << cfg.n_max << "\n";
  return os.str();
}

}  // namespace

Curve config_curve(const RunConfig& cfg) { return Curve::create(cfg.curve, {.relaxed = cfg.relaxed}); }

std::vector<double> default_probe_radii() { return {0.5, 0.9, 1.5, 2.5, 4.0}; }

std::string format_assertion(const Assertion& a) {
  std::string rel = a.relation == "eq" ? "~=" : a.relation == "le" ? "<=" : ">=";
  return std::string(a.pass ? "PASS" : "FAIL") + "  " + a.name + ": " + num(a.lhs) + " " + rel + " " + num(a.rhs) +
         " (tol " + num(a.tolerance) + ")";
}

CommandResult cmd_curve_info(const RunConfig& cfg) {
  const Curve curve = config_curve(cfg);
  std::ostringstream os;
  os << "P = " << curve.defining().to_string() << "\n";
  os << "d = " << curve.degree() << "\n";
  os << "lead coefficient (z2^d) = " << num(curve.lead_coeff()) << "\n";
  os << "relaxed = " << (curve.relaxed() ? "true" : "false") << "\n";
  const auto dirs = robin_directions(curve);
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    os << "direction " << k + 1 << ": ";
    if (curve.has_directions())
      os << "lambda = " << num(curve.direction(static_cast<int>(k) + 1));
    else
      os << "[" << num(dirs[k].a) << " : " << num(dirs[k].b) << "]";
    os << ", v = " << dirs[k].v.to_string() << "\n";
  }
  if (curve.has_directions()) {
    const auto table = cjk_table(curve);
    os << "c_jk table (rows j = 0..d-1, columns k = 1..d):\n";
    for (std::size_t j = 0; j < table.entries.size(); ++j) {
      os << "  j=" << j;
      for (const auto& c : table.entries[j]) os << "\t" << num(c);
      os << "\n";
    }
  }
  CommandResult res;
  res.report = os.str();
  res.files.push_back(write_file(cfg, "curve_info.txt", res.report));
  return res;
}

CommandResult cmd_sample(const RunConfig& cfg) {
  const Curve curve = config_curve(cfg);
  const SampledSet K = config_samples(curve, cfg);
  std::ostringstream pts;
  write_point_cloud(pts, K.points());
  CommandResult res;
  res.files.push_back(write_file(cfg, "samples.txt", pts.str()));
  res.report = header(curve, cfg) + "points: " + std::to_string(K.size()) + "\nmax residual: " +
               num(K.max_residual()) + "\n";
  return res;
}

CommandResult cmd_cheb(const RunConfig& cfg, const std::string& class_spec, int n_lo, int n_hi,
                       bool allow_unconverged) {
  if (n_lo < 1 || n_hi < n_lo) invalid("empty n range " + std::to_string(n_lo) + ".." + std::to_string(n_hi));
  const Curve curve = config_curve(cfg);
  const SampledSet K = config_samples(curve, cfg);
  const ClassSpec spec = parse_class(curve, class_spec);
  std::vector<int> ns;
  for (int n = n_lo; n <= n_hi; ++n) ns.push_back(n);
  const auto seq = chebyshev_sequence(curve, spec, K, ns, cfg.solver);

  std::ostringstream tab;
  tab << "n\tdegree\tnorm\ttn\tlower_bound\titerations\tconverged\tridge\n";
  bool unconverged = false;
  for (const auto& s : seq) {
    if (!s.ok() || !s.converged) unconverged = true;
    tab << s.n() << '\t' << s.total_degree() << '\t' << full(s.norm) << '\t' << full(s.tn) << '\t'
        << full(s.lower_bound) << '\t' << s.iterations << '\t' << (s.converged ? 1 : 0) << '\t'
        << (s.ridge_used ? 1 : 0) << '\n';
  }
  const auto est = constant_estimate(seq, spec);
  CommandResult res;
  res.files.push_back(write_file(cfg, "cheb.tsv", tab.str()));
  std::ostringstream os;
  os << header(curve, cfg) << "class: " << describe(spec) << "\n" << tab.str();
  os << "estimate: " << num(est.estimate) << " (" << to_string(est.method) << ", tail range [" << num(est.lower)
     << ", " << num(est.upper) << "]" << (est.reliable ? "" : ", unreliable") << ")\n";
  for (const auto& s : seq)
    if (!s.ok()) os << "n=" << s.n() << ": " << s.error << "\n";
  res.report = os.str();
  if (unconverged && !allow_unconverged) {
    res.report += "unconverged solves (use --allow-unconverged to accept)\n";
    res.exit_code = kExitUnconverged;
  }
  return res;
}

CommandResult cmd_robin(const RunConfig& cfg) {
  const Curve curve = config_curve(cfg);
  const SampledSet K = config_samples(curve, cfg);
  const RobinReport rep = robin_constants(curve, K, cfg.n_max, cfg.solver);
  std::ostringstream tab;
  tab << "k\tdirection\tT\trho\tvia\tn\ttn\trho_poly\tpoly_gap\testimate_gap\treliable\n";
  for (const auto& e : rep.entries)
    tab << e.k << '\t' << e.direction.label() << '\t' << full(e.estimate.estimate) << '\t' << full(e.rho) << '\t'
        << e.via << '\t' << e.n << '\t' << full(e.tn) << '\t' << full(e.rho_poly) << '\t' << full(e.poly_gap) << '\t'
        << full(e.estimate_gap) << '\t' << (e.estimate.reliable ? 1 : 0) << '\n';
  std::ostringstream os;
  os << header(curve, cfg) << tab.str() << "ordering (ascending rho):";
  for (int k : rep.ordering) os << ' ' << k;
  os << "\nstrict: " << (rep.strict ? "true" : "false") << "\n";
  CommandResult res;
  res.files.push_back(write_file(cfg, "robin.tsv", tab.str()));
  res.report = os.str();
  return res;
}

CommandResult cmd_tfd(const RunConfig& cfg) {
  const Curve curve = config_curve(cfg);
  const SampledSet K = config_samples(curve, cfg);
  std::vector<BasisId> bases{BasisId::S};
  if (curve.has_directions()) bases.push_back(BasisId::C);
  std::ostringstream tab, os;
  std::vector<std::string> files;
  tab << "basis\tdegree\tcount\tdegsum\tvalue\n";
  os << header(curve, cfg);
  for (auto b : bases) {
    const auto r = transfinite_diameter(curve, K, b, cfg.n_max);
    for (const auto& e : r.run.diam_estimates())
      tab << to_string(b) << '\t' << e.degree << '\t' << e.count << '\t' << e.degsum << '\t' << full(e.value) << '\n';
    std::ostringstream steps;
    steps << "step\tre_z1\tim_z1\tre_z2\tim_z2\tlog_vdm_increment\tdegree\tdiam_estimate\n";
    const auto& lv = r.run.log_vdm();
    std::size_t block = 0;
    for (std::size_t i = 0; i < r.run.size(); ++i) {
      const auto& z = r.run.points()[i];
      const int step = static_cast<int>(i) + 1;
      steps << step << '\t' << full(z.z1.real()) << '\t' << full(z.z1.imag()) << '\t' << full(z.z2.real()) << '\t'
            << full(z.z2.imag()) << '\t' << full(lv[i] - (i == 0 ? 0.0 : lv[i - 1])) << '\t'
            << basis_degree_of(curve, step) << '\t';
      const auto& est = r.run.diam_estimates();
      if (block < est.size() && est[block].count == step)
        steps << full(est[block++].value) << '\n';
      else
        steps << "nan\n";
    }
    files.push_back(write_file(cfg, "leja_" + to_string(b) + ".tsv", steps.str()));
    os << "d_" << to_string(b) << " = " << num(r.estimate) << " (raw " << num(r.raw) << " at degree " << cfg.n_max
       << ")\n";
  }
  CommandResult res;
  res.files = std::move(files);
  res.files.push_back(write_file(cfg, "tfd.tsv", tab.str()));
  res.report = os.str() + tab.str();
  return res;
}

CommandResult cmd_extremal(const RunConfig& cfg) {
  const Curve curve = config_curve(cfg);
  const SampledSet K = config_samples(curve, cfg);
  const auto approx = extremal_build(curve, K, cfg.family, cfg.k, cfg.n_max, cfg.solver);
  const RobinReport robin = robin_constants(curve, K, cfg.n_max, cfg.solver);
  const auto pts = probe_grid(curve, default_probe_radii(), 5);
  const auto rep = vk_max(curve, K, cfg.n_max, pts, robin, cfg.solver);

  std::ostringstream grid, os;
  write_vk_grid(grid, rep);
  os << header(curve, cfg);
  os << to_string(cfg.family) << " k=" << cfg.k << " n=" << approx.n << ": normalizer " << num(approx.normalizer)
     << ", tn " << num(approx.cheb.tn) << (approx.cheb.converged ? "" : " (unconverged)") << "\n";
  os << "minimizer: " << approx.cheb.minimizer.to_string() << "\n";
  os << "probe points: " << pts.size() << "\n";
  if (rep.has_oracle) {
    if (!rep.v.empty()) os << "max |max_k V^(k) - V_K|: " << num(rep.max_gap()) << "\n";
    os << "max |max_k Vtilde^(k) - V_K|: " << num(rep.max_gap_tilde()) << "\n";
  } else {
    os << "no oracle for this set\n";
  }
  if (!rep.tilde_hypothesis) os << "Vtilde max formula: hypothesis unmet (Robin constants not strictly increasing)\n";
  CommandResult res;
  res.files.push_back(write_file(cfg, "extremal_grid.tsv", grid.str()));
  res.report = os.str();
  return res;
}

VerifyTolerances VerifyTolerances::uniform(double value) {
  VerifyTolerances t;
  t.equality = t.inequality = t.diameter_agreement = t.product_formula = value;
  t.vn_tau = t.robin = t.extremal = t.vanishing = value;
  return t;
}

bool VerifyResult::all_pass() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

VerifyResult verify_suite(const Curve& curve, const SampledSet& K, const RunConfig& cfg, const VerifyTolerances& tol) {
  VerifyResult out;
  auto add = [&](Assertion a) { out.assertions.push_back(std::move(a)); };
  const bool directional = curve.has_directions();

  if (directional) {
    ComparisonOptions co;
    co.max_degree = cfg.n_max;
    co.equality_tol = tol.equality;
    co.inequality_slack = tol.inequality;
    co.solver = cfg.solver;
    const auto rep = comparison_report(curve, K, co);
    for (const auto& a : rep.assertions) add(a);
  } else {
    out.notes.push_back("comparison report skipped: no asymptotic directions (relaxed curve)");
  }

  const RobinReport robin = robin_constants(curve, K, cfg.n_max, cfg.solver);
  double log_prod = 0.0;
  for (const auto& e : robin.entries) {
    const std::string k = std::to_string(e.k);
    add(check_le("|robin_of_poly(t_n/|t_n|, " + k + ") + log tn|", e.poly_gap, tol.robin, 0.0));
    out.notes.push_back("rho_" + k + " = " + num(e.rho) + " (T = " + num(e.estimate.estimate) + ", " +
                        e.direction.label() + ")");
    log_prod += std::log(e.estimate.estimate);
  }
  if (!robin.strict) out.notes.push_back("Robin constants not strictly increasing");

  std::vector<BasisId> bases{BasisId::S};
  if (directional) bases.push_back(BasisId::C);
  std::vector<double> diam;
  const int tau_degree = std::min(8, cfg.n_max);
  for (auto b : bases) {
    const auto r = transfinite_diameter(curve, K, b, cfg.n_max);
    diam.push_back(r.estimate);
    out.notes.push_back("d_" + to_string(b) + " = " + num(r.estimate) + " (raw " + num(r.raw) + ")");

    const int count = basis_count_to_degree(curve, tau_degree);
    const auto taus = tau_solves(curve, K, b, count, cfg.solver);
    std::vector<double> norms;
    for (const auto& s : taus) norms.push_back(s.norm);
    const auto vt = vn_tau_check(r.run, norms, 0.0);
    double worst = 0.0;
    for (const auto& e : vt.entries) worst = std::max(worst, std::exp(e.log_ratio - e.log_bound));
    add(check_le("max V_n / (V_{n-1} n tau_n) [" + to_string(b) + ", degree <= " + std::to_string(tau_degree) + "]",
                 worst, 1.0, tol.vn_tau));
  }
  if (directional) {
    const double prod = std::exp(log_prod / curve.degree());
    add(check_equal("d_S = d_C", diam[0], diam[1], tol.diameter_agreement));
    add(check_equal("d_S = (prod T(K, lambda_k))^(1/d)", diam[0], prod, tol.product_formula));
    add(check_equal("d_C = (prod T(K, lambda_k))^(1/d)", diam[1], prod, tol.product_formula));
  }

  const auto pts = probe_grid(curve, default_probe_radii(), 5);
  const auto vk = vk_max(curve, K, cfg.n_max, pts, robin, cfg.solver);
  auto vanish = [&](const std::vector<ExtremalApprox>& fam, const std::string& name) {
    for (const auto& a : fam) {
      const auto vals = extremal_eval(curve, a, K.points());
      const double m = *std::max_element(vals.begin(), vals.end());
      add(check_le(name + "^(" + std::to_string(a.k) + ") <= 0 on K", m, tol.vanishing, 0.0));
    }
  };
  vanish(vk.v, "V");
  vanish(vk.v_tilde, "Vtilde");
  if (vk.has_oracle) {
    double over = -1e300, over_t = -1e300;
    for (const auto& r : vk.rows) {
      if (!vk.v.empty()) over = std::max(over, r.v_max - r.oracle);
      over_t = std::max(over_t, r.v_tilde_max - r.oracle);
    }
    if (!vk.v.empty()) {
      add(check_le("max_k V^(k) - V_K on probes", over, tol.extremal, 0.0));
      out.notes.push_back("max |max_k V^(k) - V_K| on probes = " + num(vk.max_gap()));
    }
    add(check_le("max_k Vtilde^(k) - V_K on probes", over_t, tol.extremal, 0.0));
    out.notes.push_back("max |max_k Vtilde^(k) - V_K| on probes = " + num(vk.max_gap_tilde()));
  } else {
    out.notes.push_back("no oracle for " + K.descriptor().describe());
  }
  return out;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  const Curve curve = config_curve(cfg);
  const SampledSet K = config_samples(curve, cfg);
  const VerifyTolerances tol = cfg.tolerance_override ? VerifyTolerances::uniform(*cfg.tolerance_override)
                                                      : VerifyTolerances{};
  const auto res = verify_suite(curve, K, cfg, tol);
  std::ostringstream os;
  os << header(curve, cfg);
  int passed = 0;
  for (const auto& a : res.assertions) {
    os << format_assertion(a) << "\n";
    passed += a.pass ? 1 : 0;
  }
  for (const auto& n : res.notes) os << "note: " << n << "\n";
  os << "summary: " << passed << "/" << res.assertions.size() << " passed\n";
  CommandResult out;
  out.report = os.str();
  out.files.push_back(write_file(cfg, "verify.txt", out.report));
  out.exit_code = res.all_pass() ? kExitPass : kExitAssertion;
  return out;
}

}  // namespace curvecheb
