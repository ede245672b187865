#include "gravdirac/regime.hpp"

#include <cmath>

#include "gravdirac/errors.hpp"

namespace gravdirac {

const char* to_string(EsaVerdict v) {
  return v == EsaVerdict::EssentiallySelfAdjoint ? "EssentiallySelfAdjoint" : "MultipleExtensions";
}

const char* to_string(RegimeReason r) {
  switch (r) {
    case RegimeReason::BetaAboveCritical: return "BetaAboveCritical";
    case RegimeReason::BetaCriticalMomentSufficient: return "BetaCriticalMomentSufficient";
    case RegimeReason::BetaCriticalMomentInsufficient: return "BetaCriticalMomentInsufficient";
    case RegimeReason::BetaBelowCritical: return "BetaBelowCritical";
    case RegimeReason::ZeroMomentNegativeBareMass: return "ZeroMomentNegativeBareMass";
    case RegimeReason::ZeroBareMass: return "ZeroBareMass";
  }
  return "?";
}

RegimeParams regime_params(const SpacetimeProfile& profile) {
  const SingularityData& s = profile.singularity();
  RegimeParams p;
  p.alpha = s.alpha;
  p.beta = s.beta;
  p.C0 = s.C0;
  p.Cbeta_prime = s.Cbeta_prime;
  p.G = profile.G();
  p.bare_mass = s.bare_mass / profile.M();
  const double Z = profile.nucleus().Z;
  p.gravity_ratio = profile.G() * profile.M() / (Z * profile.constants().alpha_s);
  p.horizon = profile.horizon().kind != HorizonKind::None;
  return p;
}

double critical_moment(double alpha, double C0, double Cbeta_prime, double G) {
  return (2.0 + alpha) / (1.0 + alpha) * std::sqrt(2.0 * G * C0) / std::abs(Cbeta_prime);
}

double moment_ratio(double alpha, double C0, double Cbeta_prime, double G, double mu_a) {
  return (1.0 + alpha) / (2.0 + alpha) * std::abs(mu_a * Cbeta_prime) / std::sqrt(2.0 * G * C0);
}

AccumulationReport accumulation_points(const RegimeParams& p, double mu_a,
                                       const ClassifyOptions& opt) {
  AccumulationReport rep;
  rep.points.push_back(+1);
  const double g = p.gravity_ratio;
  if (std::abs(g - 1.0) <= opt.ratio_tol) {
    rep.borderline_flags.push_back("gravity_ratio_equals_one");
  } else if (g > 1.0) {
    rep.points.push_back(-1);
  }
  const bool critical = std::abs(p.beta - 0.5 * (1.0 + p.alpha)) <= opt.tol_beta;
  if (mu_a != 0.0 && critical && p.C0 > 0.0 && p.G > 0.0) {
    const double R = moment_ratio(p.alpha, p.C0, p.Cbeta_prime, p.G, mu_a);
    if (std::abs(R - 1.0) <= opt.ratio_tol) rep.borderline_flags.push_back("moment_ratio_equals_one");
  }
  return rep;
}

RegimeClassification classify_params(const RegimeParams& p, double mu_a,
                                     const ClassifyOptions& opt) {
  if (p.bare_mass > opt.zero_bare_mass)
    fail(ErrorKind::PositiveBareMass, "bare mass is positive");
  if (p.horizon) fail(ErrorKind::HorizonPresent, "spacetime has a horizon");
  if (p.generalized) {
    if (!(p.alpha > -1.0)) fail(ErrorKind::InvalidArgument, "generalized mode needs alpha > -1");
  } else if (p.alpha < 0.0) {
    fail(ErrorKind::InvalidArgument, "alpha must be >= 0");
  }

  RegimeClassification c;
  c.non_electrostatic = p.generalized;
  const double beta_crit = 0.5 * (1.0 + p.alpha);
  const bool critical = std::abs(p.beta - beta_crit) <= opt.tol_beta;
  if (critical && p.C0 > 0.0 && p.G > 0.0 && p.Cbeta_prime != 0.0) {
    c.critical_mu_a = critical_moment(p.alpha, p.C0, p.Cbeta_prime, p.G);
    c.moment_ratio = moment_ratio(p.alpha, p.C0, p.Cbeta_prime, p.G, mu_a);
  }
  if (std::abs(p.beta - beta_crit) <= 10.0 * opt.tol_beta && !critical)
    c.borderline_flags.push_back("beta_near_critical");

  if (std::abs(p.bare_mass) <= opt.zero_bare_mass) {
    c.esa = EsaVerdict::EssentiallySelfAdjoint;
    c.reason = RegimeReason::ZeroBareMass;
  } else if (mu_a == 0.0 && (!p.generalized || p.beta < 1.0 + 0.5 * p.alpha)) {
    c.esa = EsaVerdict::MultipleExtensions;
    c.reason = RegimeReason::ZeroMomentNegativeBareMass;
  } else if (critical) {
    if (c.moment_ratio && *c.moment_ratio >= 1.0) {
      c.esa = EsaVerdict::EssentiallySelfAdjoint;
      c.reason = RegimeReason::BetaCriticalMomentSufficient;
    } else {
      c.esa = EsaVerdict::MultipleExtensions;
      c.reason = RegimeReason::BetaCriticalMomentInsufficient;
    }
  } else if (p.beta > beta_crit) {
    c.esa = EsaVerdict::EssentiallySelfAdjoint;
    c.reason = RegimeReason::BetaAboveCritical;
  } else {
    c.esa = EsaVerdict::MultipleExtensions;
    c.reason = RegimeReason::BetaBelowCritical;
  }

  AccumulationReport acc = accumulation_points(p, mu_a, opt);
  c.accumulation_points = acc.points;
  c.borderline_flags.insert(c.borderline_flags.end(), acc.borderline_flags.begin(),
                            acc.borderline_flags.end());
  return c;
}

RegimeClassification classify(const SpacetimeProfile& profile, double mu_a_classical,
                              const ClassifyOptions& opt) {
  const double scale = profile.constants().classical_moment();
  RegimeClassification c = classify_params(regime_params(profile), mu_a_classical * scale, opt);
  if (c.critical_mu_a) c.critical_mu_a_classical = *c.critical_mu_a / scale;
  return c;
}

AccumulationReport accumulation_points(const SpacetimeProfile& profile, double mu_a_classical,
                                       const ClassifyOptions& opt) {
  return accumulation_points(regime_params(profile),
                             mu_a_classical * profile.constants().classical_moment(), opt);
}

}  // namespace gravdirac
