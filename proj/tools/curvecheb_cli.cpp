// curvecheb: Chebyshev constants, Robin constants, transfinite diameters and
// extremal-like functions on algebraic curves in C^2.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "curvecheb/commands.hpp"
#include "curvecheb/error.hpp"

using namespace curvecheb;

namespace {

struct Overrides {
  std::string config;
  std::optional<int> n_max;
  std::optional<int> resolution;
  std::optional<unsigned long long> seed;
  bool relaxed = false;
  std::optional<std::string> out;
  bool allow_unconverged = false;
};

RunConfig build_config(const Overrides& o) {
  if (o.config.empty()) invalid("--config is required");
  RunConfig cfg = load_config(o.config);
  if (o.n_max) cfg.n_max = *o.n_max;
  if (o.resolution) {
    cfg.resolution = *o.resolution;
    cfg.set.resolution = *o.resolution;
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.relaxed) cfg.relaxed = true;
  if (o.out) cfg.out_dir = *o.out;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chebyshev constants, Robin constants, transfinite diameters and extremal-like functions on "
               "algebraic curves"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config, "Run configuration (JSON)");
  app.add_option("--n-max", o.n_max, "Largest total degree")->check(CLI::PositiveNumber);
  app.add_option("--resolution", o.resolution, "Sample grid size")->check(CLI::Range(16, 1 << 20));
  app.add_option("--seed", o.seed, "Seed for random curves");
  app.add_flag("--relaxed", o.relaxed, "Accept curves with horizontal or axis-parallel asymptotes");
  app.add_option("--out", o.out, "Output directory");
  app.add_flag("--allow-unconverged", o.allow_unconverged, "Exit 0 even if a minimax solve did not converge");

  auto* info = app.add_subcommand("curve-info", "Degree, directions, v_k and the c_jk table");
  auto* samp = app.add_subcommand("sample", "Write the sampled set");
  auto* cheb = app.add_subcommand("cheb", "Chebyshev norms and constant estimate for one class");
  std::string class_spec;
  int n_lo = 1;
  std::optional<int> n_hi;
  cheb->add_option("--class", class_spec, "MQ:v1, MRQ:z1,v1, Z:0, Mz1jVk:0,1, TildeMl:0,1, prefix:S");
  cheb->add_option("--n-min", n_lo, "First class parameter");
  cheb->add_option("--n-hi", n_hi, "Last class parameter (default --n-max)");
  auto* robin = app.add_subcommand("robin", "Robin constants per direction");
  auto* tfd = app.add_subcommand("tfd", "Transfinite diameter estimates from Leja points");
  auto* ext = app.add_subcommand("extremal", "Extremal-like functions and their max formulas");
  std::optional<std::string> family;
  std::optional<int> k;
  ext->add_option("--family", family, "Vk or VkTilde");
  ext->add_option("--k", k, "Family index");
  auto* verify = app.add_subcommand("verify", "Run the identity checks; exit 1 on any failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }

  try {
    RunConfig cfg = build_config(o);
    CommandResult res;
    if (*info) {
      res = cmd_curve_info(cfg);
    } else if (*samp) {
      res = cmd_sample(cfg);
    } else if (*cheb) {
      res = cmd_cheb(cfg, class_spec.empty() ? cfg.class_spec : class_spec, n_lo, n_hi.value_or(cfg.n_max),
                     o.allow_unconverged);
    } else if (*robin) {
      res = cmd_robin(cfg);
    } else if (*tfd) {
      res = cmd_tfd(cfg);
    } else if (*ext) {
      if (family) cfg.family = extremal_family_from_string(*family);
      if (k) cfg.k = *k;
      res = cmd_extremal(cfg);
    } else if (*verify) {
      res = cmd_verify(cfg);
    }
    std::cout << res.report;
    for (const auto& f : res.files) std::cerr << "wrote " << f << "\n";
    return res.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::InvalidInput ? kExitInvalid : kExitUnconverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
