#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gravdirac {

struct ZetaValues {
  double zeta;
  double dzeta;
  double d2zeta;
};

struct Exponents {
  double a;  // small-mu exponent
  double b;  // large-mu exponent
};

enum class LawKind { Maxwell, Born, Kink, PowerTail, Custom };

const char* to_string(LawKind kind);

// Reduced electromagnetic Hamiltonian zeta(mu). Immutable; copies share state.
class VacuumLaw {
 public:
  using Fn = std::function<double(double)>;

  static VacuumLaw maxwell();
  static VacuumLaw born(double field_strength = 1.0);
  static VacuumLaw kink(double mu1);
  // Maxwellian below mu_t, elasticity relaxing smoothly to b above it; mu_t
  // follows from the requested tail coefficient c_b and the width tau >= 2.
  static VacuumLaw power_tail(double b, double c_b, double tau = 2.0);
  // Same family parameterized by its transition point.
  static VacuumLaw power_tail_from_transition(double b, double mu_t, double tau = 2.0);
  static VacuumLaw custom(Fn zeta, Fn dzeta = {}, Fn d2zeta = {},
                          std::optional<Exponents> declared = std::nullopt);
  static VacuumLaw tabulated(std::vector<double> mu, std::vector<double> zeta);
  static VacuumLaw tabulated_csv(const std::string& path);

  LawKind kind() const;
  std::string name() const;

  ZetaValues evaluate(double mu) const;
  double zeta(double mu) const;   // never throws at the kink
  double dzeta(double mu) const;  // one-sided (upper) at the kink

  std::optional<Exponents> declared_exponents() const;
  // c_b in zeta ~ c_b mu^b at large mu, when known in closed form
  std::optional<double> tail_coefficient() const;
  // points where zeta is not smooth (quadrature split points)
  std::vector<double> breakpoints() const;

  double field_strength() const;
  double mu1() const;
  double tail_b() const;
  double tail_cb() const;
  double tail_tau() const;
  double transition() const;
  const std::string& table_path() const;
  bool is_tabulated() const;

  struct Impl;

 private:
  explicit VacuumLaw(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct ConditionResult {
  std::string name;
  bool pass = true;
  bool flagged = false;  // near-boundary violation tolerated for tabulated laws
  std::optional<double> first_violation;
};

struct ValidationReport {
  std::vector<ConditionResult> conditions;
  bool all_pass() const;
  const ConditionResult& get(const std::string& name) const;
};

std::vector<double> default_validation_grid();

ValidationReport validate(const VacuumLaw& law,
                          const std::vector<double>& mu_grid = default_validation_grid());

struct ExponentWindows {
  double small_lo = 1e-24, small_hi = 1e-20;
  double large_lo = 1e120, large_hi = 1e124;
  double tol = 1e-3;
};

Exponents extract_exponents(const VacuumLaw& law, const ExponentWindows& w = {});
Exponents fit_exponents(const VacuumLaw& law, const ExponentWindows& w = {});
bool exponents_admissible(const Exponents& e, double tol = 1e-4);

// least-squares slope of log zeta against log mu on [lo, hi]
double loglog_slope(const VacuumLaw& law, double lo, double hi, int points = 41);

}  // namespace gravdirac
