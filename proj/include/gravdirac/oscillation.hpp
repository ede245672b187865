#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gravdirac/regime.hpp"
#include "gravdirac/tortoise.hpp"

namespace gravdirac {

enum class Branch { Plus, Minus };
enum class Variant { Center, EdgePlus, EdgeMinus };
enum class Endpoint { Zero, Infinity };
enum class OscVerdict { Oscillatory, NonOscillatory, Inconclusive };

const char* to_string(Branch b);
const char* to_string(Variant v);
const char* to_string(Endpoint e);
const char* to_string(OscVerdict v);

// V1 = b + a - 1, V2 = b - a + 1, p = -k c (+ mu_a d for the moment operator)
using ScalarCoefficients = std::function<void(double x, double& V1, double& V2, double& p)>;

struct OscillationProblem {
  Branch branch = Branch::Plus;
  Variant variant = Variant::Center;
  double eps_edge = 0.5;
  ScalarCoefficients coefficients;
  // replaces the coefficient formula entirely when set
  std::function<double(double)> gamma_override;
  // x range where the coefficients are meaningful near 0
  double x_zero_start = 1e-6;

  static OscillationProblem from_map(const TortoiseMap& map, int k, double mu_a, Branch branch,
                                     Variant variant, double eps_edge = 0.5);
  static OscillationProblem from_gamma(std::function<double(double)> gamma);

  // (c1, c2, d) of the selected variant
  void weights(double& c1, double& c2, double& d) const;
};

// Plus:  (V2 - c2)^2 - d^2 + p^2 + p'
// Minus: (c1 + V1)^2 - d^2 + p^2 - p'
double gamma(const OscillationProblem& prob, double x);

struct OscillationOptions {
  double margin = 0.05;         // around -1/4 for the asymptotic tier
  int decades = 8;              // sampling depth for the asymptotic tier
  int dyadic_intervals = 60;    // direct integration depth
  double x_inf_start = 10.0;
  double x_inf_cap = 1e12;      // direct integration stops here at infinity
};

struct OscillationEvidence {
  Endpoint endpoint = Endpoint::Infinity;
  std::vector<double> x_samples;
  std::vector<double> x2_gamma;      // x^2 Gamma at x_samples
  std::optional<double> L;           // extrapolated limit (may be +-inf)
  bool extrapolation_unstable = false;
  std::optional<OscVerdict> tier1;   // empty when deferred
  std::vector<int> sign_changes;     // per dyadic interval toward the endpoint
  std::optional<OscVerdict> tier2;
  double zero_rate = 0.0;            // sign changes per unit ln x, last half
  std::optional<bool> p_nu_criterion;  // x (p +- nu) <= -1 near 0
  OscVerdict verdict = OscVerdict::Inconclusive;
};

OscillationEvidence is_oscillatory(const OscillationProblem& prob, Endpoint endpoint,
                                   const OscillationOptions& opt = {});

struct AccumulationEvidence {
  std::vector<int> points;  // subset of {+1, -1}
  OscillationEvidence plus_zero, plus_inf, minus_zero, minus_inf;
  std::optional<double> analytic_coefficient;  // C with L = C^2 +- C at critical beta
  std::vector<std::string> flags;
  bool inconclusive = false;
};

AccumulationEvidence classify_accumulation_via_oscillation(const TortoiseMap& map, double mu_a,
                                                           double eps_edge = 0.5, int k = -1,
                                                           const OscillationOptions& opt = {});

}  // namespace gravdirac
