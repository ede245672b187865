#include "gravdirac/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include <omp.h>

#include "gravdirac/bohr_sommerfeld.hpp"
#include "gravdirac/errors.hpp"
#include "gravdirac/oscillation.hpp"
#include "gravdirac/regime.hpp"
#include "gravdirac/spacetime.hpp"
#include "gravdirac/spectrum.hpp"
#include "gravdirac/tortoise.hpp"

namespace gravdirac {

namespace fs = std::filesystem;

const char* version() { return "0.1.0"; }

namespace {

std::string cell_text(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + cell_text(v[i]);
    return s;
  }
  return v.dump();
}

// non-finite doubles are not JSON numbers
ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

ordered_json opt_num(const std::optional<double>& v) { return v ? num(*v) : ordered_json(); }

}  // namespace

std::string Table::to_csv() const {
  std::string s;
  for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
  s += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + cell_text(row[i]);
    s += "\n";
  }
  return s;
}

std::string Table::to_json() const {
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json o = ordered_json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = row[i];
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::string s;
  for (const auto& [k, v] : fields) s += k + " = " + cell_text(v) + "\n";
  return s;
}

std::string Report::to_json() const {
  ordered_json o = ordered_json::object();
  for (const auto& [k, v] : fields) o[k] = v;
  return o.dump(2) + "\n";
}

namespace {

SpacetimeProfile build_profile(const RunConfig& c) {
  ProfileOptions po;
  po.tol.rel = c.solver.quad_rel;
  po.tol.abs = c.solver.quad_abs;
  return SpacetimeProfile::build(c.law.build(), c.nucleus, c.constants, po);
}

double mu_internal(const RunConfig& c, double mu_classical) {
  return mu_classical * c.constants.classical_moment();
}

struct Emit {
  const RunConfig& c;
  TaskOutput& out;
  void table(const Table& t) {
    out.extension = c.format;
    out.content = c.format == "json" ? t.to_json() : t.to_csv();
  }
  void report(const Report& r) {
    out.extension = c.format == "json" ? "json" : "txt";
    out.content = c.format == "json" ? r.to_json() : r.to_text();
  }
};

void task_profile(const RunConfig& c, Emit& emit) {
  const SpacetimeProfile p = build_profile(c);
  std::vector<double> radii = c.profile.radii;
  if (radii.empty()) {
    const double l0 = std::log10(c.profile.r_min), l1 = std::log10(c.profile.r_max);
    for (int i = 0; i < c.profile.points; ++i)
      radii.push_back(std::pow(10.0, l0 + (l1 - l0) * i / (c.profile.points - 1)));
  }
  Table t{{"r", "m", "phi", "f2", "energy"}, {}};
  t.rows.resize(radii.size());
  std::string err;
  // field evaluations are independent; rows land in order
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < radii.size(); ++i) {
    try {
      const double r = radii[i];
      t.rows[i] = {num(r), num(p.mass(r)), num(p.phi(r)), num(p.f2(r)), num(p.energy(r))};
    } catch (const std::exception& e) {
#pragma omp critical
      if (err.empty()) err = e.what();
    }
  }
  if (!err.empty()) fail(ErrorKind::QuadratureNonConvergent, err);
  emit.out.summary["rows"] = radii.size();
  emit.out.summary["bare_mass"] = num(p.bare_mass());
  emit.out.summary["horizon"] = to_string(p.horizon().kind);
  emit.table(t);
}

void task_validate_law(const RunConfig& c, Emit& emit) {
  const VacuumLaw law = c.law.build();
  const ValidationReport vr = validate(law);
  Report r;
  r.add("law", law.name());
  r.add("all_pass", vr.all_pass());
  for (const auto& cond : vr.conditions) {
    r.add("condition." + cond.name, cond.pass ? (cond.flagged ? "flagged" : "pass") : "fail");
    r.add("condition." + cond.name + ".first_violation", opt_num(cond.first_violation));
  }
  const Exponents e = extract_exponents(law);
  r.add("exponent_a", num(e.a));
  r.add("exponent_b", num(e.b));
  r.add("exponents_admissible", exponents_admissible(e));
  emit.out.summary["all_pass"] = vr.all_pass();
  emit.report(r);
  if (!vr.all_pass()) fail(ErrorKind::ValidationError, "law '" + law.name() + "' violates the admissibility conditions");
}

void task_classify(const RunConfig& c, Emit& emit) {
  const SpacetimeProfile p = build_profile(c);
  const RegimeParams rp = regime_params(p);
  const double mu = mu_internal(c, c.spectrum.mu_a);
  const RegimeClassification rc = classify(p, c.spectrum.mu_a);
  Report r;
  r.add("law", p.law().name());
  r.add("Z", num(c.nucleus.Z));
  r.add("mu_a_classical", num(c.spectrum.mu_a));
  r.add("mu_a", num(mu));
  r.add("esa", to_string(rc.esa));
  r.add("reason", to_string(rc.reason));
  r.add("critical_mu_a", opt_num(rc.critical_mu_a));
  r.add("critical_mu_a_classical", opt_num(rc.critical_mu_a_classical));
  r.add("moment_ratio", opt_num(rc.moment_ratio));
  r.add("accumulation_points", rc.accumulation_points);
  r.add("borderline_flags", rc.borderline_flags);
  r.add("non_electrostatic", rc.non_electrostatic);
  r.add("alpha", num(rp.alpha));
  r.add("beta", num(rp.beta));
  r.add("C0", num(rp.C0));
  r.add("Cbeta_prime", num(rp.Cbeta_prime));
  r.add("G", num(rp.G));
  r.add("bare_mass", num(rp.bare_mass));
  r.add("gravity_ratio", num(rp.gravity_ratio));
  emit.out.summary["esa"] = to_string(rc.esa);
  emit.out.summary["reason"] = to_string(rc.reason);
  emit.report(r);
}

void task_spectrum(const RunConfig& c, Emit& emit) {
  const SpacetimeProfile p = build_profile(c);
  SpectrumOptions so;
  so.x0 = c.solver.x0;
  so.grid_nodes = c.solver.grid_nodes;
  so.nodes_below = std::min<std::size_t>(10000, c.solver.grid_nodes / 4);
  so.x_max = c.solver.x_max;
  so.max_count = c.solver.max_count;
  so.richardson_rel = c.solver.richardson_rel;
  so.edge_tol = c.solver.edge_tol;

  Table t{{"k", "theta", "index", "eigenvalue", "richardson_error", "x0_sensitivity"}, {}};
  ordered_json channels = ordered_json::array();
  std::optional<Error> first_error;
  std::optional<TortoiseMap> map;
  for (int k = c.spectrum.k_min; k <= c.spectrum.k_max; ++k) {
    if (k == 0) continue;
    for (double theta : c.spectrum.thetas) {
      ordered_json ch{{"k", k}, {"theta", num(theta)}};
      try {
        if (!map) {
          TortoiseOptions to;
          to.x_max = std::max(200.0, so.x_max ? *so.x_max : outer_cutoff(c.spectrum.window_hi));
          to.n_nodes = so.grid_nodes;
          map = TortoiseMap::build(p, to);
        }
        RadialOperatorSpec spec;
        spec.k = k;
        spec.theta = theta;
        spec.mu_a = mu_internal(c, c.spectrum.mu_a);
        const SpectrumResult sr =
            gap_eigenvalues(spec, *map, c.spectrum.window_lo, c.spectrum.window_hi, so);
        for (const auto& ev : sr.eigenvalues)
          t.rows.push_back({k, num(theta), ev.index, num(ev.value), num(ev.richardson_error),
                            num(ev.x0_sensitivity)});
        ch["status"] = "ok";
        ch["converged"] = sr.count;
        ch["unconverged"] = sr.unconverged.size();
        ch["in_window"] = sr.in_window;
        ch["capped"] = sr.capped;
        ch["theta_mute"] = sr.theta_mute;
        ch["x_max"] = num(sr.x_max);
        double worst = 0.0;
        for (const auto& ev : sr.eigenvalues) worst = std::max(worst, ev.richardson_error);
        ch["max_richardson_error"] = num(worst);
      } catch (const Error& e) {
        ch["status"] = to_string(e.kind());
        ch["message"] = e.what();
        if (!first_error) first_error = e;
      }
      channels.push_back(std::move(ch));
    }
  }
  emit.out.summary["channels"] = std::move(channels);
  emit.out.summary["rows"] = t.rows.size();
  emit.table(t);
  if (first_error) throw *first_error;
}

Branch parse_branch(const std::string& s) { return s == "minus" ? Branch::Minus : Branch::Plus; }

Variant parse_variant(const std::string& s) {
  if (s == "edge_plus") return Variant::EdgePlus;
  if (s == "edge_minus") return Variant::EdgeMinus;
  return Variant::Center;
}

void task_oscillate(const RunConfig& c, Emit& emit) {
  const SpacetimeProfile p = build_profile(c);
  const TortoiseMap map = TortoiseMap::build(p);
  const auto prob = OscillationProblem::from_map(map, c.oscillate.k, mu_internal(c, c.spectrum.mu_a),
                                                 parse_branch(c.oscillate.branch),
                                                 parse_variant(c.oscillate.variant), c.oscillate.eps);
  const Endpoint ep = c.oscillate.endpoint == "zero" ? Endpoint::Zero : Endpoint::Infinity;
  const OscillationEvidence ev = is_oscillatory(prob, ep);
  Report r;
  r.add("branch", to_string(prob.branch));
  r.add("variant", to_string(prob.variant));
  r.add("endpoint", to_string(ep));
  r.add("eps", num(c.oscillate.eps));
  r.add("k", c.oscillate.k);
  r.add("L", opt_num(ev.L));
  r.add("extrapolation_unstable", ev.extrapolation_unstable);
  r.add("tier1", ev.tier1 ? ordered_json(to_string(*ev.tier1)) : ordered_json());
  r.add("sign_changes", ev.sign_changes);
  r.add("tier2", ev.tier2 ? ordered_json(to_string(*ev.tier2)) : ordered_json());
  r.add("zero_rate", num(ev.zero_rate));
  r.add("p_nu_criterion", ev.p_nu_criterion ? ordered_json(*ev.p_nu_criterion) : ordered_json());
  r.add("verdict", to_string(ev.verdict));
  emit.out.summary["verdict"] = to_string(ev.verdict);
  emit.report(r);
}

void task_bs_spectrum(const RunConfig& c, Emit& emit) {
  const BSModel model = parse_bs_model(c.bs.model);
  std::vector<double> Zs;
  if (c.bs.scan_Z)
    for (int z = c.bs.scan_Z->first; z <= c.bs.scan_Z->second; ++z) Zs.push_back(z);
  else
    Zs.push_back(c.nucleus.Z);

  struct Item {
    double Z;
    int n;
    BSMinimum m;
    std::string status;
  };
  std::vector<Item> items;
  for (double Z : Zs)
    for (int n = 1; n <= c.bs.n_max; ++n) items.push_back({Z, n, {}, ""});

  // profiles are per Z; build them once before the parallel sweep
  std::map<double, std::optional<SpacetimeProfile>> profiles;
  std::map<double, std::string> profile_error;
  std::map<double, NucleusParams> nuclei;
  for (double Z : Zs) {
    NucleusParams nuc = c.nucleus;
    if (Z != c.nucleus.Z) {
      nuc.N.reset();
      nuc.A_override.reset();
      if (nuc.M_adm) nuc.M_adm = *nuc.M_adm * Z / c.nucleus.Z;
    }
    nuclei[Z] = nuc;
    profiles[Z];
    if (model == BSModel::GR_NonlinearVacuum) {
      try {
        ProfileOptions po;
        po.tol.rel = c.solver.quad_rel;
        po.tol.abs = c.solver.quad_abs;
        profiles[Z] = SpacetimeProfile::build(c.law.build(), nuc, c.constants, po);
      } catch (const Error& e) {
        profile_error[Z] = to_string(e.kind());
      }
    }
  }

#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < items.size(); ++i) {
    Item& it = items[i];
    auto pe = profile_error.find(it.Z);
    if (pe != profile_error.end()) {
      it.status = pe->second;
      continue;
    }
    BSProblem prob;
    prob.model = model;
    prob.nucleus = nuclei.at(it.Z);
    prob.consts = c.constants;
    prob.n = it.n;
    prob.profile = profiles.at(it.Z);
    try {
      it.m = minimize(prob);
      it.status = it.m.unbounded ? "Unbounded" : "Minimum";
    } catch (const Error& e) {
      it.status = to_string(e.kind());
    }
  }

  Table t{{"model", "Z", "n", "rho_star", "E_star", "status"}, {}};
  std::size_t unbounded = 0, failed = 0;
  for (const auto& it : items) {
    const bool ok = it.status == "Minimum" || it.status == "Unbounded";
    if (it.status == "Unbounded") ++unbounded;
    if (!ok) ++failed;
    t.rows.push_back({to_string(model), num(it.Z), it.n, ok ? num(it.m.rho_star) : ordered_json(),
                      ok ? num(it.m.E_star) : ordered_json(), it.status});
  }
  emit.out.summary["rows"] = items.size();
  emit.out.summary["unbounded"] = unbounded;
  emit.out.summary["failed"] = failed;
  emit.table(t);
}

}  // namespace

TaskOutput run_task(const std::string& task, const RunConfig& c) {
  TaskOutput out;
  out.task = task;
  out.extension = c.format == "json" ? "json" : "csv";
  Emit emit{c, out};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (task == "profile")
      task_profile(c, emit);
    else if (task == "validate-law")
      task_validate_law(c, emit);
    else if (task == "classify")
      task_classify(c, emit);
    else if (task == "spectrum")
      task_spectrum(c, emit);
    else if (task == "oscillate")
      task_oscillate(c, emit);
    else if (task == "bs-spectrum")
      task_bs_spectrum(c, emit);
    else
      fail(ErrorKind::InvalidArgument, "unknown task '" + task + "'");
  } catch (const Error& e) {
    out.ok = false;
    out.error_kind = to_string(e.kind());
    out.error_message = e.what();
  } catch (const std::exception& e) {
    out.ok = false;
    out.error_kind = "InternalError";
    out.error_message = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

bool RunManifest::ok() const {
  return std::all_of(tasks.begin(), tasks.end(), [](const TaskStatus& t) { return t.ok; });
}

ordered_json RunManifest::to_json() const {
  ordered_json j;
  j["tool"] = "gravdirac";
  j["version"] = tool_version;
  j["ok"] = ok();
  j["config"] = config_snapshot;
  ordered_json ts = ordered_json::array();
  ordered_json outputs = ordered_json::array();
  for (const auto& t : tasks) {
    ordered_json o;
    o["task"] = t.task;
    o["status"] = t.ok ? "ok" : "error";
    if (!t.ok) {
      o["error_kind"] = t.error_kind;
      o["error_message"] = t.error_message;
    }
    o["output"] = t.output;
    o["seconds"] = t.seconds;
    o["summary"] = t.summary;
    ts.push_back(std::move(o));
    if (!t.output.empty()) outputs.push_back(t.output);
  }
  j["tasks"] = std::move(ts);
  j["outputs"] = std::move(outputs);
  return j;
}

std::vector<std::string> ordered_tasks(const std::vector<std::string>& tasks) {
  std::vector<std::string> out;
  for (const auto& k : known_tasks())
    if (std::find(tasks.begin(), tasks.end(), k) != tasks.end()) out.push_back(k);
  return out;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  f << content;
  f.close();
  if (!f) fail(ErrorKind::IoError, "write failed for '" + path.string() + "'");
}

}  // namespace

RunManifest run(const RunConfig& config) {
  validate(config);
  apply_worker_env();
  const fs::path dir = config.output_dir.empty() ? fs::path(".") : fs::path(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::IoError, "cannot create '" + dir.string() + "': " + ec.message());
  const fs::path manifest_path = dir / "manifest.json";
  // a stale manifest would claim outputs this run has not produced yet
  fs::remove(manifest_path, ec);

  RunManifest m;
  m.config_snapshot = serialize(config);
  m.tool_version = version();
  for (const auto& task : ordered_tasks(config.tasks)) {
    const TaskOutput out = run_task(task, config);
    TaskStatus st;
    st.task = task;
    st.ok = out.ok;
    st.error_kind = out.error_kind;
    st.error_message = out.error_message;
    st.seconds = out.seconds;
    st.summary = out.summary;
    const fs::path final_path = dir / (task + "." + out.extension);
    const fs::path partial = fs::path(final_path.string() + ".partial");
    fs::remove(final_path, ec);
    write_file(partial, out.content);
    if (out.ok) {
      fs::rename(partial, final_path);
      st.output = final_path.string();
    } else {
      st.output = partial.string();
    }
    m.tasks.push_back(std::move(st));
  }
  m.path = manifest_path.string();
  const fs::path tmp = fs::path(m.path + ".tmp");
  write_file(tmp, m.to_json().dump(2) + "\n");
  fs::rename(tmp, manifest_path);
  return m;
}

void apply_worker_env() {
  if (const char* w = std::getenv("GRAVDIRAC_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(w, &end, 10);
    if (end != w && *end == '\0' && n >= 1) omp_set_num_threads(int(n));
  }
}

}  // namespace gravdirac
