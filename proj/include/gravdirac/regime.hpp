#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gravdirac/spacetime.hpp"

namespace gravdirac {

enum class EsaVerdict { EssentiallySelfAdjoint, MultipleExtensions };

enum class RegimeReason {
  BetaAboveCritical,
  BetaCriticalMomentSufficient,
  BetaCriticalMomentInsufficient,
  BetaBelowCritical,
  ZeroMomentNegativeBareMass,
  ZeroBareMass,
};

const char* to_string(EsaVerdict v);
const char* to_string(RegimeReason r);

// Everything the verdict depends on. Moments here are in internal units
// (e * hbar / m_e c); multiply classical-moment inputs by
// PhysicalConstants::classical_moment().
struct RegimeParams {
  double alpha = 0.0;
  double beta = 0.0;
  double C0 = 0.0;
  double Cbeta_prime = 0.0;
  double G = 0.0;
  double bare_mass = -1.0;
  double gravity_ratio = 0.0;  // G M m_e / (Z e^2)
  bool horizon = false;
  // allow alpha > -1 and test beta < 1 + alpha/2 (not an electrostatic profile)
  bool generalized = false;
};

RegimeParams regime_params(const SpacetimeProfile& profile);

struct RegimeClassification {
  EsaVerdict esa = EsaVerdict::MultipleExtensions;
  RegimeReason reason = RegimeReason::BetaBelowCritical;
  std::optional<double> critical_mu_a;            // internal units
  std::optional<double> critical_mu_a_classical;  // classical-moment units
  std::optional<double> moment_ratio;             // (1+a)/(2+a) |mu C'| / sqrt(2 G C0)
  std::vector<int> accumulation_points;           // subset of {+1, -1}
  std::vector<std::string> borderline_flags;
  bool non_electrostatic = false;
};

struct ClassifyOptions {
  double tol_beta = 1e-4;
  double zero_bare_mass = 1e-10;  // relative to M
  double ratio_tol = 1e-9;        // for the two equality flags
};

// critical |mu_a| at beta = (1+alpha)/2, internal units
double critical_moment(double alpha, double C0, double Cbeta_prime, double G);
double moment_ratio(double alpha, double C0, double Cbeta_prime, double G, double mu_a);

RegimeClassification classify_params(const RegimeParams& p, double mu_a,
                                     const ClassifyOptions& opt = {});
// mu_a in classical-moment units
RegimeClassification classify(const SpacetimeProfile& profile, double mu_a_classical,
                              const ClassifyOptions& opt = {});

struct AccumulationReport {
  std::vector<int> points;
  std::vector<std::string> borderline_flags;
};

AccumulationReport accumulation_points(const RegimeParams& p, double mu_a,
                                       const ClassifyOptions& opt = {});
AccumulationReport accumulation_points(const SpacetimeProfile& profile, double mu_a_classical,
                                       const ClassifyOptions& opt = {});

}  // namespace gravdirac
