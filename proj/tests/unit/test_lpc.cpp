#include <doctest.h>

#include <cmath>

#include "gravdirac/lpc.hpp"
#include "gravdirac/regime.hpp"

using namespace gravdirac;

namespace {

struct Probe {
  LpcResult lpc;
  EsaVerdict esa;
};

Probe probe(const SpacetimeProfile& p, double mu, int k = -1, double lambda = 0.0) {
  const auto map = TortoiseMap::build(p);
  RadialOperatorSpec s;
  s.k = k;
  s.mu_a = mu;
  s.lambda_probe = lambda;
  return {lpc_probe(s, map), classify_params(regime_params(p), mu).esa};
}

LpcVerdict expected(EsaVerdict v) {
  return v == EsaVerdict::EssentiallySelfAdjoint ? LpcVerdict::LimitPoint : LpcVerdict::LimitCircle;
}

NucleusParams nucleus(double Z) {
  NucleusParams n;
  n.Z = Z;
  n.N = 0;
  return n;
}

}  // namespace

TEST_CASE("RWN probe agrees with the classifier") {
  PhysicalConstants c;
  const auto p = SpacetimeProfile::build(VacuumLaw::maxwell(), nucleus(1), c);
  const double crit = 1.5 * std::sqrt(p.G());
  struct Case {
    double mu;
    int k;
    double lambda;
  };
  for (auto [mu, k, lam] : {Case{0, -1, 0}, Case{2 * crit, -1, 0}, Case{-2 * crit, -1, 0},
                            Case{0.5 * crit, -1, 0}, Case{2 * crit, 1, 0.5}, Case{0, 2, -0.5}}) {
    INFO("mu/crit = " << mu / crit << " k = " << k);
    const auto r = probe(p, mu, k, lam);
    CHECK(r.lpc.verdict == expected(r.esa));
  }
}

TEST_CASE("born law with negative bare mass is limit circle") {
  PhysicalConstants c;
  const auto p = SpacetimeProfile::build(VacuumLaw::born(1e10), nucleus(1), c);
  for (double m : {0.0, 1.0, 1e3}) {
    const auto r = probe(p, m * c.classical_moment());
    CHECK(r.esa == EsaVerdict::MultipleExtensions);
    CHECK(r.lpc.verdict == LpcVerdict::LimitCircle);
    CHECK(r.lpc.first.square_integrable);
    CHECK(r.lpc.second.square_integrable);
  }
}

TEST_CASE("probe tracks the critical moment in an exaggerated-G configuration") {
  PhysicalConstants c;
  c.gamma_pe = 5.5e-3 / (c.alpha_s * c.epsilon);
  NucleusParams n = nucleus(50);
  n.M_adm = 10;
  const auto p = SpacetimeProfile::build(VacuumLaw::maxwell(), n, c);
  const double crit = 1.5 * std::sqrt(p.G());
  for (double f : {0.0, 0.9, 1.1, 2.0}) {
    INFO("mu/crit = " << f);
    const auto r = probe(p, f * crit);
    CHECK(r.lpc.verdict == expected(r.esa));
  }
}

TEST_CASE("flat weak Coulomb is limit point") {
  PhysicalConstants c;
  c.gamma_pe = 0.0;
  const auto map = TortoiseMap::build(SpacetimeProfile::build(VacuumLaw::maxwell(), nucleus(1), c));
  RadialOperatorSpec s;
  s.lambda_probe = 0.0;
  const auto r = lpc_probe(s, map);
  CHECK(r.verdict == LpcVerdict::LimitPoint);
  const bool both = r.first.square_integrable && r.second.square_integrable;
  CHECK_FALSE(both);
}
