#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gravdirac/errors.hpp"
#include "gravdirac/regime.hpp"

using namespace gravdirac;

namespace {

NucleusParams nucleus(double Z, int N) {
  NucleusParams n;
  n.Z = Z;
  n.N = N;
  return n;
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("RWN critical moment reduces to (3/2) sqrt(G)") {
  PhysicalConstants c;
  for (auto [Z, N] : {std::pair{1.0, 0}, std::pair{26.0, 30}, std::pair{92.0, 146}}) {
    const auto p = SpacetimeProfile::build(VacuumLaw::maxwell(), nucleus(Z, N), c);
    const auto rc = classify(p, 0.0);
    REQUIRE(rc.critical_mu_a);
    CHECK(std::abs(*rc.critical_mu_a / (1.5 * std::sqrt(c.G())) - 1.0) < 1e-12);
  }
  // M override does not enter the reduction
  NucleusParams n = nucleus(3, 4);
  n.M_adm = 12345.0;
  const auto p = SpacetimeProfile::build(VacuumLaw::maxwell(), n, c);
  CHECK(std::abs(*classify(p, 0.0).critical_mu_a / (1.5 * std::sqrt(c.G())) - 1.0) < 1e-12);
}

TEST_CASE("physical electron moment is far above critical in RWN") {
  PhysicalConstants c;
  const auto p = SpacetimeProfile::build(VacuumLaw::maxwell(), nucleus(1, 0), c);
  const auto rc = classify(p, 1.0);
  CHECK(rc.esa == EsaVerdict::EssentiallySelfAdjoint);
  CHECK(rc.reason == RegimeReason::BetaCriticalMomentSufficient);
  REQUIRE(rc.critical_mu_a_classical);
  CHECK(*rc.critical_mu_a_classical == doctest::Approx(1.3e-18).epsilon(0.05));
}

TEST_CASE("zero moment with negative bare mass gives multiple extensions for every k") {
  PhysicalConstants c;
  const auto n = nucleus(1, 0);
  for (const auto& law : {VacuumLaw::maxwell(), VacuumLaw::born(1e10)}) {
    const auto p = SpacetimeProfile::build(law, n, c);
    const auto rc = classify(p, 0.0);
    CHECK(rc.esa == EsaVerdict::MultipleExtensions);
    CHECK(rc.reason == RegimeReason::ZeroMomentNegativeBareMass);
  }
}

TEST_CASE("born law with negative bare mass is never ESA") {
  PhysicalConstants c;
  const auto p = SpacetimeProfile::build(VacuumLaw::born(1e10), nucleus(1, 0), c);
  REQUIRE(p.bare_mass() < 0);
  for (double mu : {0.0, 1.0, 1e3, -1e3, 1e30}) {
    const auto rc = classify(p, mu);
    CHECK(rc.esa == EsaVerdict::MultipleExtensions);
    CHECK_FALSE(rc.critical_mu_a);
  }
  CHECK(classify(p, 1.0).reason == RegimeReason::BetaBelowCritical);
}

TEST_CASE("verdict depends only on the moment ratio") {
  RegimeParams p;
  p.alpha = 1.0;
  p.beta = 1.0;
  p.C0 = 0.3;
  p.Cbeta_prime = 0.7;
  p.G = 1e-6;
  const double crit = critical_moment(p.alpha, p.C0, p.Cbeta_prime, p.G);
  for (double s : {1e-3, 0.5, 10.0, 1e4}) {
    RegimeParams q = p;
    q.C0 = s * s * p.C0;
    q.Cbeta_prime = s * p.Cbeta_prime;
    for (double f : {0.3, 0.999, 1.001, 3.0}) {
      const double mu = f * crit;
      CHECK(moment_ratio(q.alpha, q.C0, q.Cbeta_prime, q.G, mu) ==
            doctest::Approx(moment_ratio(p.alpha, p.C0, p.Cbeta_prime, p.G, mu)).epsilon(1e-13));
      CHECK(classify_params(q, mu).esa == classify_params(p, mu).esa);
      CHECK((classify_params(p, mu).esa == EsaVerdict::EssentiallySelfAdjoint) == (f >= 1.0));
    }
  }
}

TEST_CASE("increasing the moment never flips ESA back") {
  RegimeParams p;
  p.alpha = 2.0;
  p.beta = 1.5;
  p.C0 = 1.0;
  p.Cbeta_prime = 2.0;
  p.G = 1e-4;
  bool seen_esa = false;
  for (int i = 0; i <= 200; ++i) {
    const double mu = 1e-4 * std::pow(1.1, i);
    const bool esa = classify_params(p, mu).esa == EsaVerdict::EssentiallySelfAdjoint;
    if (seen_esa) CHECK(esa);
    seen_esa = seen_esa || esa;
  }
  CHECK(seen_esa);
}

TEST_CASE("beta above critical is ESA") {
  RegimeParams p;
  p.alpha = 0.2;
  p.beta = 0.9;
  p.C0 = 1.0;
  p.Cbeta_prime = 1.0;
  p.G = 1e-6;
  const auto rc = classify_params(p, 1e-9);
  CHECK(rc.esa == EsaVerdict::EssentiallySelfAdjoint);
  CHECK(rc.reason == RegimeReason::BetaAboveCritical);
  p.beta = 0.6 + 5e-5;  // within tol of critical 0.6
  CHECK(classify_params(p, 1e-9).reason == RegimeReason::BetaCriticalMomentInsufficient);
  p.beta = 0.6 + 5e-4;
  CHECK(has(classify_params(p, 1e-9).borderline_flags, "beta_near_critical"));
}

TEST_CASE("accumulation points follow the gravity ratio") {
  PhysicalConstants c;
  const auto p = SpacetimeProfile::build(VacuumLaw::maxwell(), nucleus(1, 0), c);
  CHECK(classify(p, 0.0).accumulation_points == std::vector<int>{1});
  CHECK(regime_params(p).gravity_ratio == doctest::Approx(c.gamma_pe * 1.0).epsilon(1e-12));

  RegimeParams q;
  q.alpha = 1.0;
  q.beta = 1.0;
  q.C0 = 1.0;
  q.Cbeta_prime = 1.0;
  q.G = 1e-3;
  q.gravity_ratio = 2.0;
  CHECK(accumulation_points(q, 0.0).points == std::vector<int>{1, -1});
  q.gravity_ratio = 0.5;
  CHECK(accumulation_points(q, 0.0).points == std::vector<int>{1});
  q.gravity_ratio = 1.0;
  const auto eq = accumulation_points(q, 0.0);
  CHECK(eq.points == std::vector<int>{1});
  CHECK(has(eq.borderline_flags, "gravity_ratio_equals_one"));
  // moment ratio exactly one is flagged
  const double crit = critical_moment(q.alpha, q.C0, q.Cbeta_prime, q.G);
  q.gravity_ratio = 0.5;
  CHECK(has(accumulation_points(q, crit).borderline_flags, "moment_ratio_equals_one"));
  CHECK_FALSE(has(accumulation_points(q, 2 * crit).borderline_flags, "moment_ratio_equals_one"));
}

TEST_CASE("zero bare mass defers to its own regime") {
  PhysicalConstants c;
  const auto n = nucleus(1, 0);
  const double M = n.mass(c), Q = n.charge(c);
  const auto p = SpacetimeProfile::build(VacuumLaw::kink(std::pow(M, 4) / (2 * std::pow(Q, 6))), n, c);
  const auto rc = classify(p, 0.0);
  CHECK(rc.esa == EsaVerdict::EssentiallySelfAdjoint);
  CHECK(rc.reason == RegimeReason::ZeroBareMass);
}

TEST_CASE("errors outside the assumptions") {
  RegimeParams p;
  p.alpha = 0.0;
  p.beta = 0.0;
  p.bare_mass = 0.1;
  CHECK_THROWS_AS(classify_params(p, 0.0), Error);
  try {
    classify_params(p, 0.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PositiveBareMass);
  }
  p.bare_mass = -1.0;
  p.horizon = true;
  try {
    classify_params(p, 0.0);
    FAIL("expected HorizonPresent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HorizonPresent);
  }
}

TEST_CASE("generalized parameters are marked non-electrostatic") {
  RegimeParams p;
  p.alpha = -0.5;
  p.beta = 0.5;  // below 1 + alpha / 2 = 0.75
  p.C0 = 1.0;
  p.Cbeta_prime = 1.0;
  p.G = 1e-3;
  p.generalized = true;
  const auto rc = classify_params(p, 0.0);
  CHECK(rc.non_electrostatic);
  CHECK(rc.esa == EsaVerdict::MultipleExtensions);
  p.generalized = false;
  CHECK_THROWS_AS(classify_params(p, 0.0), Error);
}
