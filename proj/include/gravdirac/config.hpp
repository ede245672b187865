#pragma once

#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "gravdirac/units.hpp"
#include "gravdirac/vacuum_law.hpp"

namespace gravdirac {

struct LawConfig {
  std::string name = "maxwell";  // maxwell | born | kink | power_tail | custom
  double field_strength = 1.0;   // born
  double mu1 = 1.0;              // kink
  double b = 0.5;                // power_tail
  double c_b = 1.0;
  double tau = 2.0;
  std::string table;             // custom: two-column CSV (mu, zeta)

  VacuumLaw build() const;
  bool operator==(const LawConfig&) const = default;
};

struct SolverConfig {
  std::size_t grid_nodes = 200000;
  double x0 = 1e-10;
  std::optional<double> x_max;
  std::size_t max_count = 50;
  double richardson_rel = 1e-6;
  double edge_tol = 1e-4;
  double quad_rel = 1e-10;
  double quad_abs = 1e-12;
  bool operator==(const SolverConfig&) const = default;
};

struct SpectrumConfig {
  int k_min = -1;
  int k_max = -1;
  std::vector<double> thetas{0.0};
  double mu_a = 0.0;  // classical-moment units
  double window_lo = 0.0;
  double window_hi = 0.999;
  bool operator==(const SpectrumConfig&) const = default;
};

struct OscillateConfig {
  std::string branch = "plus";     // plus | minus
  std::string variant = "center";  // center | edge_plus | edge_minus
  std::string endpoint = "infinity";  // zero | infinity
  double eps = 0.5;
  int k = -1;
  bool operator==(const OscillateConfig&) const = default;
};

struct BSConfig {
  std::string model = "SR";
  int n_max = 1;
  std::optional<std::pair<int, int>> scan_Z;
  bool operator==(const BSConfig&) const = default;
};

struct ProfileConfig {
  std::vector<double> radii;  // explicit radii; empty means a log grid
  double r_min = 1e-6;
  double r_max = 1e4;
  int points = 41;
  bool operator==(const ProfileConfig&) const = default;
};

struct RunConfig {
  NucleusParams nucleus;
  PhysicalConstants constants;
  LawConfig law;
  SolverConfig solver;
  SpectrumConfig spectrum;
  OscillateConfig oscillate;
  BSConfig bs;
  ProfileConfig profile;
  std::vector<std::string> tasks{"classify"};
  std::string output_dir;
  std::string format = "csv";  // csv | json

  bool operator==(const RunConfig& o) const;
};

const std::vector<std::string>& known_tasks();

RunConfig parse_config_string(const std::string& text);
RunConfig parse_config_file(const std::string& path);
// INI text with every field; parse(serialize(c)) == c
std::string serialize(const RunConfig& c);
// throws ValidationError listing every violation
void validate(const RunConfig& c);

// 17 significant digits
std::string format_double(double v);

}  // namespace gravdirac
