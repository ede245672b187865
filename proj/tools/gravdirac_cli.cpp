// gravdirac command-line entry point
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gravdirac/config.hpp"
#include "gravdirac/errors.hpp"
#include "gravdirac/run.hpp"

using namespace gravdirac;

namespace {

constexpr int kOk = 0, kTaskError = 1, kConfigError = 2;

struct Common {
  std::string config;
  std::optional<double> Z, M_adm, gamma_pe, mu_a;
  std::optional<int> N;
  std::optional<std::string> law, out, emit;
  std::vector<std::string> law_params;
};

struct Flags {
  // spectrum
  std::optional<std::string> k_range, window;
  std::vector<double> thetas;
  std::optional<std::size_t> max_count, grid_nodes;
  std::optional<double> x_max;
  // oscillate
  std::optional<std::string> branch, variant, endpoint;
  std::optional<double> eps;
  std::optional<int> k;
  // bs-spectrum
  std::optional<std::string> model, scan_Z;
  std::optional<int> n_max;
  // profile
  std::vector<double> radii;
  std::optional<double> r_min, r_max;
  std::optional<int> points;
};

void add_common(CLI::App* app, Common& c, bool with_mu) {
  app->add_option("--config", c.config, "INI config file")->check(CLI::ExistingFile);
  app->add_option("--Z", c.Z, "nuclear charge number");
  app->add_option("--N", c.N, "neutron number");
  app->add_option("--M-adm", c.M_adm, "ADM mass override (electron masses)");
  app->add_option("--law", c.law, "maxwell|born|kink|power_tail|custom");
  app->add_option("--law-param", c.law_params, "law parameter as key=value (repeatable)");
  app->add_option("--gamma-pe", c.gamma_pe, "gravity-to-Coulomb coupling ratio");
  app->add_option("--out", c.out, "output directory (writes files and a manifest)");
  app->add_option("--emit", c.emit, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  if (with_mu) app->add_option("--mu-a", c.mu_a, "anomalous moment in classical-moment units");
}

std::pair<double, double> split_pair(const std::string& s, const std::string& seps,
                                     const std::string& flag) {
  const auto pos = s.find_first_of(seps);
  if (pos == std::string::npos)
    fail(ErrorKind::ParseError, flag + ": expected two values separated by one of '" + seps + "'");
  try {
    return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
  } catch (const std::logic_error&) {
    fail(ErrorKind::ParseError, flag + ": cannot parse '" + s + "'");
  }
}

void apply_law_param(LawConfig& law, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) fail(ErrorKind::ParseError, "--law-param expects key=value, got '" + kv + "'");
  const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
  if (key == "table") {
    law.table = val;
    return;
  }
  double v = 0.0;
  try {
    v = std::stod(val);
  } catch (const std::logic_error&) {
    fail(ErrorKind::ParseError, "--law-param " + key + ": cannot parse '" + val + "'");
  }
  if (key == "field_strength") law.field_strength = v;
  else if (key == "mu1") law.mu1 = v;
  else if (key == "b") law.b = v;
  else if (key == "c_b") law.c_b = v;
  else if (key == "tau") law.tau = v;
  else fail(ErrorKind::ParseError, "--law-param: unknown key '" + key + "'");
}

RunConfig build_config(const std::string& task, const Common& c, const Flags& f) {
  RunConfig cfg = c.config.empty() ? RunConfig{} : parse_config_file(c.config);
  if (c.Z) {
    cfg.nucleus.Z = *c.Z;
    if (!c.N) cfg.nucleus.N.reset();
  }
  if (c.N) cfg.nucleus.N = *c.N;
  if (c.M_adm) cfg.nucleus.M_adm = *c.M_adm;
  if (c.gamma_pe) cfg.constants.gamma_pe = *c.gamma_pe;
  if (c.law) cfg.law.name = *c.law;
  for (const auto& kv : c.law_params) apply_law_param(cfg.law, kv);
  if (c.mu_a) cfg.spectrum.mu_a = *c.mu_a;
  if (c.out) cfg.output_dir = *c.out;
  if (c.emit) cfg.format = *c.emit;

  if (f.k_range) {
    const auto [a, b] = split_pair(*f.k_range, ":,", "--k-range");
    cfg.spectrum.k_min = int(a);
    cfg.spectrum.k_max = int(b);
  }
  if (!f.thetas.empty()) cfg.spectrum.thetas = f.thetas;
  if (f.window) {
    const auto [lo, hi] = split_pair(*f.window, ",", "--window");
    cfg.spectrum.window_lo = lo;
    cfg.spectrum.window_hi = hi;
  }
  if (f.max_count) cfg.solver.max_count = *f.max_count;
  if (f.grid_nodes) cfg.solver.grid_nodes = *f.grid_nodes;
  if (f.x_max) cfg.solver.x_max = *f.x_max;
  if (f.branch) cfg.oscillate.branch = *f.branch;
  if (f.variant) cfg.oscillate.variant = *f.variant;
  if (f.endpoint) cfg.oscillate.endpoint = *f.endpoint;
  if (f.eps) cfg.oscillate.eps = *f.eps;
  if (f.k) cfg.oscillate.k = *f.k;
  if (f.model) cfg.bs.model = *f.model;
  if (f.n_max) cfg.bs.n_max = *f.n_max;
  if (f.scan_Z) {
    const auto [lo, hi] = split_pair(*f.scan_Z, ":", "--scan-Z");
    cfg.bs.scan_Z = std::pair{int(lo), int(hi)};
  }
  if (!f.radii.empty()) cfg.profile.radii = f.radii;
  if (f.r_min) cfg.profile.r_min = *f.r_min;
  if (f.r_max) cfg.profile.r_max = *f.r_max;
  if (f.points) cfg.profile.points = *f.points;
  if (task != "run") cfg.tasks = {task};
  validate(cfg);
  return cfg;
}

int execute(const std::string& task, const RunConfig& cfg, bool to_dir) {
  if (task == "run" || to_dir) {
    const RunManifest m = run(cfg);
    for (const auto& t : m.tasks) {
      std::cout << t.task << ": " << (t.ok ? "ok" : "error") << " -> " << t.output << "\n";
      if (!t.ok) std::cerr << t.task << ": " << t.error_message << "\n";
    }
    std::cout << "manifest: " << m.path << "\n";
    return m.ok() ? kOk : kTaskError;
  }
  apply_worker_env();
  const TaskOutput out = run_task(task, cfg);
  std::cout << out.content;
  if (!out.ok) {
    std::cerr << task << ": " << out.error_message << "\n";
    return kTaskError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gravdirac: Dirac operator spectra on nonlinear-electrovacuum spacetimes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  Common common;
  Flags f;

  auto* profile = app.add_subcommand("profile", "dump m, phi, f^2 and field energy at radii");
  add_common(profile, common, false);
  profile->add_option("--radii", f.radii, "explicit radii")->delimiter(',');
  profile->add_option("--r-min", f.r_min);
  profile->add_option("--r-max", f.r_max);
  profile->add_option("--points", f.points);

  auto* vlaw = app.add_subcommand("validate-law", "check the admissibility conditions of a law");
  add_common(vlaw, common, false);

  auto* classify = app.add_subcommand("classify", "self-adjointness regime report");
  add_common(classify, common, true);

  auto* spectrum = app.add_subcommand("spectrum", "gap eigenvalues per (k, theta)");
  add_common(spectrum, common, true);
  spectrum->add_option("--k-range", f.k_range, "kmin:kmax");
  spectrum->add_option("--theta", f.thetas, "boundary parameter (repeatable)")->take_all();
  spectrum->add_option("--window", f.window, "lo,hi");
  spectrum->add_option("--max-count", f.max_count);
  spectrum->add_option("--grid-nodes", f.grid_nodes);
  spectrum->add_option("--x-max", f.x_max);

  auto* osc = app.add_subcommand("oscillate", "oscillation test of the squared operator");
  add_common(osc, common, true);
  osc->add_option("--branch", f.branch)->check(CLI::IsMember({"plus", "minus"}));
  osc->add_option("--variant", f.variant)->check(CLI::IsMember({"center", "edge_plus", "edge_minus"}));
  osc->add_option("--endpoint", f.endpoint)->check(CLI::IsMember({"zero", "infinity"}));
  osc->add_option("--eps", f.eps);
  osc->add_option("--k", f.k);

  auto* bs = app.add_subcommand("bs-spectrum", "Bohr-Sommerfeld circular-orbit energies");
  add_common(bs, common, false);
  bs->add_option("--model", f.model, "BohrNR|SR|GR_RWN|GR_NonlinearVacuum");
  bs->add_option("--n-max", f.n_max);
  bs->add_option("--scan-Z", f.scan_Z, "lo:hi");

  auto* runc = app.add_subcommand("run", "execute every task of a config file");
  runc->add_option("--config", common.config, "INI config file")->required()->check(CLI::ExistingFile);
  runc->add_option("--out", common.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string task = sub->get_name();
  RunConfig cfg;
  try {
    cfg = build_config(task, common, f);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  try {
    return execute(task, cfg, common.out.has_value());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kTaskError;
  }
}
