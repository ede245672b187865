#include "gravdirac/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "gravdirac/bohr_sommerfeld.hpp"
#include "gravdirac/errors.hpp"

namespace gravdirac {

namespace pt = boost::property_tree;

VacuumLaw LawConfig::build() const {
  if (name == "maxwell") return VacuumLaw::maxwell();
  if (name == "born") return VacuumLaw::born(field_strength);
  if (name == "kink") return VacuumLaw::kink(mu1);
  if (name == "power_tail") return VacuumLaw::power_tail(b, c_b, tau);
  if (name == "custom") return VacuumLaw::tabulated_csv(table);
  fail(ErrorKind::ValidationError, "unknown law '" + name + "'");
}

bool RunConfig::operator==(const RunConfig& o) const {
  auto nuc = [](const NucleusParams& n) { return std::tie(n.Z, n.N, n.M_adm, n.A_override); };
  auto con = [](const PhysicalConstants& c) { return std::tie(c.alpha_s, c.epsilon, c.gamma_pe); };
  return nuc(nucleus) == nuc(o.nucleus) && con(constants) == con(o.constants) && law == o.law &&
         solver == o.solver && spectrum == o.spectrum && oscillate == o.oscillate && bs == o.bs &&
         profile == o.profile && tasks == o.tasks && output_dir == o.output_dir &&
         format == o.format;
}

const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> t{"profile",   "validate-law", "classify",
                                          "spectrum",  "oscillate",    "bs-spectrum"};
  return t;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"nucleus", {"Z", "N", "M_adm", "A"}},
      {"constants", {"alpha_s", "epsilon", "gamma_pe"}},
      {"law", {"name", "field_strength", "mu1", "b", "c_b", "tau", "table"}},
      {"solver",
       {"grid_nodes", "x0", "x_max", "max_count", "richardson_rel", "edge_tol", "quad_rel",
        "quad_abs"}},
      {"spectrum", {"k_min", "k_max", "thetas", "mu_a", "window_lo", "window_hi"}},
      {"oscillation", {"branch", "variant", "endpoint", "eps", "k"}},
      {"bs", {"model", "n_max", "scan_Z"}},
      {"profile", {"radii", "r_min", "r_max", "points"}},
      {"run", {"tasks", "output_dir", "format"}},
  };
  return s;
}

std::string unquote(std::string v) {
  boost::algorithm::trim(v);
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front())
    v = v.substr(1, v.size() - 2);
  return v;
}

struct Reader {
  const pt::ptree& tree;

  std::optional<std::string> raw(const std::string& sec, const std::string& key) const {
    auto s = tree.get_child_optional(sec);
    if (!s) return std::nullopt;
    auto v = s->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return unquote(*v);
  }

  [[noreturn]] static void bad(const std::string& sec, const std::string& key, const std::string& v,
                               const char* what) {
    fail(ErrorKind::ParseError, "key " + sec + "." + key + ": cannot parse '" + v + "' as " + what);
  }

  static double to_double(const std::string& sec, const std::string& key, const std::string& v) {
    try {
      std::size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size()) bad(sec, key, v, "a number");
      return d;
    } catch (const std::logic_error&) {
      bad(sec, key, v, "a number");
    }
  }

  static long to_int(const std::string& sec, const std::string& key, const std::string& v) {
    try {
      std::size_t pos = 0;
      const long i = std::stol(v, &pos);
      if (pos != v.size()) bad(sec, key, v, "an integer");
      return i;
    } catch (const std::logic_error&) {
      bad(sec, key, v, "an integer");
    }
  }

  void get(const std::string& sec, const std::string& key, double& out) const {
    if (auto v = raw(sec, key)) out = to_double(sec, key, *v);
  }
  void get(const std::string& sec, const std::string& key, std::optional<double>& out) const {
    if (auto v = raw(sec, key)) out = to_double(sec, key, *v);
  }
  void get(const std::string& sec, const std::string& key, int& out) const {
    if (auto v = raw(sec, key)) out = int(to_int(sec, key, *v));
  }
  void get(const std::string& sec, const std::string& key, std::optional<int>& out) const {
    if (auto v = raw(sec, key)) out = int(to_int(sec, key, *v));
  }
  void get(const std::string& sec, const std::string& key, std::size_t& out) const {
    if (auto v = raw(sec, key)) {
      const long i = to_int(sec, key, *v);
      if (i < 0) bad(sec, key, *v, "a non-negative integer");
      out = std::size_t(i);
    }
  }
  void get(const std::string& sec, const std::string& key, std::string& out) const {
    if (auto v = raw(sec, key)) out = *v;
  }
  void get(const std::string& sec, const std::string& key, std::vector<double>& out) const {
    if (auto v = raw(sec, key)) {
      out.clear();
      std::vector<std::string> parts;
      boost::algorithm::split(parts, *v, boost::is_any_of(","));
      for (auto& p : parts) {
        boost::algorithm::trim(p);
        if (!p.empty()) out.push_back(to_double(sec, key, p));
      }
    }
  }
  void get(const std::string& sec, const std::string& key, std::vector<std::string>& out) const {
    if (auto v = raw(sec, key)) {
      out.clear();
      std::vector<std::string> parts;
      boost::algorithm::split(parts, *v, boost::is_any_of(","));
      for (auto& p : parts) {
        boost::algorithm::trim(p);
        if (!p.empty()) out.push_back(p);
      }
    }
  }
};

RunConfig from_tree(const pt::ptree& tree) {
  for (const auto& [sec, body] : tree) {
    auto it = schema().find(sec);
    if (it == schema().end()) {
      if (!body.data().empty()) fail(ErrorKind::ParseError, "key '" + sec + "' outside any section");
      fail(ErrorKind::ParseError, "unknown section [" + sec + "]");
    }
    for (const auto& [key, v] : body)
      if (!it->second.count(key)) fail(ErrorKind::ParseError, "unknown key " + sec + "." + key);
  }
  const Reader r{tree};
  RunConfig c;
  r.get("nucleus", "Z", c.nucleus.Z);
  r.get("nucleus", "N", c.nucleus.N);
  r.get("nucleus", "M_adm", c.nucleus.M_adm);
  r.get("nucleus", "A", c.nucleus.A_override);
  r.get("constants", "alpha_s", c.constants.alpha_s);
  r.get("constants", "epsilon", c.constants.epsilon);
  r.get("constants", "gamma_pe", c.constants.gamma_pe);
  r.get("law", "name", c.law.name);
  r.get("law", "field_strength", c.law.field_strength);
  r.get("law", "mu1", c.law.mu1);
  r.get("law", "b", c.law.b);
  r.get("law", "c_b", c.law.c_b);
  r.get("law", "tau", c.law.tau);
  r.get("law", "table", c.law.table);
  r.get("solver", "grid_nodes", c.solver.grid_nodes);
  r.get("solver", "x0", c.solver.x0);
  r.get("solver", "x_max", c.solver.x_max);
  r.get("solver", "max_count", c.solver.max_count);
  r.get("solver", "richardson_rel", c.solver.richardson_rel);
  r.get("solver", "edge_tol", c.solver.edge_tol);
  r.get("solver", "quad_rel", c.solver.quad_rel);
  r.get("solver", "quad_abs", c.solver.quad_abs);
  r.get("spectrum", "k_min", c.spectrum.k_min);
  r.get("spectrum", "k_max", c.spectrum.k_max);
  r.get("spectrum", "thetas", c.spectrum.thetas);
  r.get("spectrum", "mu_a", c.spectrum.mu_a);
  r.get("spectrum", "window_lo", c.spectrum.window_lo);
  r.get("spectrum", "window_hi", c.spectrum.window_hi);
  r.get("oscillation", "branch", c.oscillate.branch);
  r.get("oscillation", "variant", c.oscillate.variant);
  r.get("oscillation", "endpoint", c.oscillate.endpoint);
  r.get("oscillation", "eps", c.oscillate.eps);
  r.get("oscillation", "k", c.oscillate.k);
  r.get("bs", "model", c.bs.model);
  r.get("bs", "n_max", c.bs.n_max);
  if (auto v = r.raw("bs", "scan_Z")) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, *v, boost::is_any_of(":"));
    if (parts.size() != 2) fail(ErrorKind::ParseError, "key bs.scan_Z: expected lo:hi, got '" + *v + "'");
    c.bs.scan_Z = std::pair{int(Reader::to_int("bs", "scan_Z", unquote(parts[0]))),
                            int(Reader::to_int("bs", "scan_Z", unquote(parts[1])))};
  }
  r.get("profile", "radii", c.profile.radii);
  r.get("profile", "r_min", c.profile.r_min);
  r.get("profile", "r_max", c.profile.r_max);
  r.get("profile", "points", c.profile.points);
  r.get("run", "tasks", c.tasks);
  r.get("run", "output_dir", c.output_dir);
  r.get("run", "format", c.format);
  return c;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

}  // namespace

RunConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorKind::ParseError, "line " + std::to_string(e.line()) + ": " + e.message());
  }
  RunConfig c = from_tree(tree);
  validate(c);
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config_string(ss.str());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) fail(e.kind(), path + ": " + e.what());
    throw;
  }
}

std::string serialize(const RunConfig& c) {
  std::ostringstream o;
  auto kv = [&](const std::string& k, const std::string& v) { o << k << " = " << v << "\n"; };
  auto kd = [&](const std::string& k, double v) { kv(k, format_double(v)); };
  o << "[nucleus]\n";
  kd("Z", c.nucleus.Z);
  if (c.nucleus.N) kv("N", std::to_string(*c.nucleus.N));
  if (c.nucleus.M_adm) kd("M_adm", *c.nucleus.M_adm);
  if (c.nucleus.A_override) kd("A", *c.nucleus.A_override);
  o << "\n[constants]\n";
  kd("alpha_s", c.constants.alpha_s);
  kd("epsilon", c.constants.epsilon);
  kd("gamma_pe", c.constants.gamma_pe);
  o << "\n[law]\n";
  kv("name", c.law.name);
  kd("field_strength", c.law.field_strength);
  kd("mu1", c.law.mu1);
  kd("b", c.law.b);
  kd("c_b", c.law.c_b);
  kd("tau", c.law.tau);
  if (!c.law.table.empty()) kv("table", c.law.table);
  o << "\n[solver]\n";
  kv("grid_nodes", std::to_string(c.solver.grid_nodes));
  kd("x0", c.solver.x0);
  if (c.solver.x_max) kd("x_max", *c.solver.x_max);
  kv("max_count", std::to_string(c.solver.max_count));
  kd("richardson_rel", c.solver.richardson_rel);
  kd("edge_tol", c.solver.edge_tol);
  kd("quad_rel", c.solver.quad_rel);
  kd("quad_abs", c.solver.quad_abs);
  o << "\n[spectrum]\n";
  kv("k_min", std::to_string(c.spectrum.k_min));
  kv("k_max", std::to_string(c.spectrum.k_max));
  kv("thetas", join(c.spectrum.thetas));
  kd("mu_a", c.spectrum.mu_a);
  kd("window_lo", c.spectrum.window_lo);
  kd("window_hi", c.spectrum.window_hi);
  o << "\n[oscillation]\n";
  kv("branch", c.oscillate.branch);
  kv("variant", c.oscillate.variant);
  kv("endpoint", c.oscillate.endpoint);
  kd("eps", c.oscillate.eps);
  kv("k", std::to_string(c.oscillate.k));
  o << "\n[bs]\n";
  kv("model", c.bs.model);
  kv("n_max", std::to_string(c.bs.n_max));
  if (c.bs.scan_Z)
    kv("scan_Z", std::to_string(c.bs.scan_Z->first) + ":" + std::to_string(c.bs.scan_Z->second));
  o << "\n[profile]\n";
  if (!c.profile.radii.empty()) kv("radii", join(c.profile.radii));
  kd("r_min", c.profile.r_min);
  kd("r_max", c.profile.r_max);
  kv("points", std::to_string(c.profile.points));
  o << "\n[run]\n";
  kv("tasks", join(c.tasks));
  if (!c.output_dir.empty()) kv("output_dir", c.output_dir);
  kv("format", c.format);
  return o.str();
}

void validate(const RunConfig& c) {
  std::vector<std::string> v;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) v.push_back(msg);
  };
  auto positive = [&](double x, const std::string& key) {
    need(x > 0.0 && std::isfinite(x), key + " must be positive and finite");
  };
  positive(c.nucleus.Z, "nucleus.Z");
  if (c.nucleus.N) need(*c.nucleus.N >= 0, "nucleus.N must be >= 0");
  if (c.nucleus.M_adm) need(std::isfinite(*c.nucleus.M_adm), "nucleus.M_adm must be finite");
  if (c.nucleus.A_override) positive(*c.nucleus.A_override, "nucleus.A");
  positive(c.constants.alpha_s, "constants.alpha_s");
  positive(c.constants.epsilon, "constants.epsilon");
  need(c.constants.gamma_pe >= 0.0 && std::isfinite(c.constants.gamma_pe),
       "constants.gamma_pe must be >= 0");

  const std::set<std::string> laws{"maxwell", "born", "kink", "power_tail", "custom"};
  need(laws.count(c.law.name) > 0, "law.name '" + c.law.name + "' is not one of maxwell|born|kink|power_tail|custom");
  if (c.law.name == "born") positive(c.law.field_strength, "law.field_strength");
  if (c.law.name == "kink") positive(c.law.mu1, "law.mu1");
  if (c.law.name == "power_tail") {
    need(c.law.b >= 0.5 && c.law.b <= 1.0, "law.b must lie in [1/2, 1]");
    positive(c.law.c_b, "law.c_b");
    need(c.law.tau >= 2.0, "law.tau must be >= 2");
  }
  if (c.law.name == "custom") need(!c.law.table.empty(), "law.table is required for a custom law");

  need(c.solver.grid_nodes >= 1000, "solver.grid_nodes must be >= 1000");
  positive(c.solver.x0, "solver.x0");
  if (c.solver.x_max) need(*c.solver.x_max > c.solver.x0, "solver.x_max must exceed solver.x0");
  need(c.solver.max_count >= 1, "solver.max_count must be >= 1");
  positive(c.solver.richardson_rel, "solver.richardson_rel");
  positive(c.solver.edge_tol, "solver.edge_tol");
  positive(c.solver.quad_rel, "solver.quad_rel");
  positive(c.solver.quad_abs, "solver.quad_abs");

  need(c.spectrum.k_min != 0 && c.spectrum.k_max != 0, "spectrum.k_min/k_max must be nonzero");
  need(c.spectrum.k_min <= c.spectrum.k_max, "spectrum.k_min must be <= spectrum.k_max");
  need(!c.spectrum.thetas.empty(), "spectrum.thetas must not be empty");
  for (double t : c.spectrum.thetas)
    need(t >= 0.0 && t < std::numbers::pi, "spectrum.thetas entries must lie in [0, pi)");
  need(std::isfinite(c.spectrum.mu_a), "spectrum.mu_a must be finite");
  need(c.spectrum.window_lo < c.spectrum.window_hi, "spectrum.window_lo must be below window_hi");

  need(c.oscillate.branch == "plus" || c.oscillate.branch == "minus",
       "oscillation.branch must be plus|minus");
  need(c.oscillate.variant == "center" || c.oscillate.variant == "edge_plus" ||
           c.oscillate.variant == "edge_minus",
       "oscillation.variant must be center|edge_plus|edge_minus");
  need(c.oscillate.endpoint == "zero" || c.oscillate.endpoint == "infinity",
       "oscillation.endpoint must be zero|infinity");
  need(c.oscillate.eps > 0.0 && c.oscillate.eps < 1.0, "oscillation.eps must lie in (0, 1)");
  need(c.oscillate.k != 0, "oscillation.k must be nonzero");

  try {
    parse_bs_model(c.bs.model);
  } catch (const Error&) {
    v.push_back("bs.model '" + c.bs.model + "' is unknown");
  }
  need(c.bs.n_max >= 1, "bs.n_max must be >= 1");
  if (c.bs.scan_Z)
    need(c.bs.scan_Z->first >= 1 && c.bs.scan_Z->first <= c.bs.scan_Z->second,
         "bs.scan_Z must satisfy 1 <= lo <= hi");

  for (double r : c.profile.radii) need(r > 0.0, "profile.radii entries must be positive");
  positive(c.profile.r_min, "profile.r_min");
  need(c.profile.r_max > c.profile.r_min, "profile.r_max must exceed profile.r_min");
  need(c.profile.points >= 2, "profile.points must be >= 2");

  need(!c.tasks.empty(), "run.tasks must not be empty");
  for (const auto& t : c.tasks)
    need(std::find(known_tasks().begin(), known_tasks().end(), t) != known_tasks().end(),
         "run.tasks entry '" + t + "' is unknown");
  need(c.format == "csv" || c.format == "json", "run.format must be csv|json");

  if (!v.empty()) {
    std::string msg = std::to_string(v.size()) + " violation(s):";
    for (const auto& s : v) msg += "\n  " + s;
    fail(ErrorKind::ValidationError, msg);
  }
}

}  // namespace gravdirac
