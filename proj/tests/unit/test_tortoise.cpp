#include <doctest.h>

#include <cmath>

#include "gravdirac/errors.hpp"
#include "gravdirac/tortoise.hpp"

using namespace gravdirac;

namespace {

NucleusParams hydrogen() {
  NucleusParams n;
  n.Z = 1;
  n.N = 0;
  return n;
}

double loglog(auto f, double x1, double x2) { return std::log(f(x2) / f(x1)) / std::log(x2 / x1); }

}  // namespace

TEST_CASE("flat limit is the identity map") {
  PhysicalConstants c;
  c.gamma_pe = 0.0;
  const auto m = TortoiseMap::build(SpacetimeProfile::build(VacuumLaw::maxwell(), hydrogen(), c));
  CHECK(m.flat());
  for (double x : {1e-9, 0.5, 150.0}) {
    CHECK(m.r_of_x(x) == x);
    const auto k = m.at(x);
    CHECK(k.a == 1.0);
    CHECK(k.b == doctest::Approx(c.alpha_s / x).epsilon(1e-13));
    CHECK(k.c == doctest::Approx(1.0 / x).epsilon(1e-13));
  }
}

TEST_CASE("maxwell map obeys dr/dx = f^2 and the inner power law") {
  PhysicalConstants c;
  const auto p = SpacetimeProfile::build(VacuumLaw::maxwell(), hydrogen(), c);
  const auto m = TortoiseMap::build(p);
  CHECK(m.inner_slope() == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  for (double x : {1e-30, 1e-12, 1e-3, 1.0, 50.0, 190.0}) {
    const double h = 1e-5 * x;
    const double drdx = (m.r_of_x(x + h) - m.r_of_x(x - h)) / (2 * h);
    const double r = m.r_of_x(x);
    CHECK(drdx == doctest::Approx(p.f2(r)).epsilon(1e-5));
    CHECK(m.x_of_r(r) == doctest::Approx(x).epsilon(1e-9));
  }
  // r / x -> 1
  CHECK(m.r_of_x(190.0) / 190.0 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("coefficient exponents near the origin") {
  PhysicalConstants c;
  const auto p = SpacetimeProfile::build(VacuumLaw::maxwell(), hydrogen(), c);
  const auto m = TortoiseMap::build(p);
  const double al = 1.0, be = 1.0;
  const double x1 = 1e-40, x2 = 1e-36;
  CHECK(loglog([&](double x) { return m.r_of_x(x); }, x1, x2) == doctest::Approx(1 / (2 + al)).epsilon(1e-3));
  CHECK(loglog([&](double x) { return m.at(x).a; }, x1, x2) ==
        doctest::Approx(-(1 + al) / (4 + 2 * al)).epsilon(1e-3));
  CHECK(loglog([&](double x) { return m.at(x).c; }, x1, x2) ==
        doctest::Approx(-(3 + al) / (4 + 2 * al)).epsilon(1e-3));
  CHECK(loglog([&](double x) { return m.at(x).b; }, x1, x2) == doctest::Approx(-be / (2 + al)).epsilon(1e-3));
  CHECK(loglog([&](double x) { return std::abs(m.at(x).d); }, x1, x2) ==
        doctest::Approx(-(3 + al + 2 * be) / (4 + 2 * al)).epsilon(1e-3));
}

TEST_CASE("far-field coefficients") {
  PhysicalConstants c;
  // strong field: negative bare mass, no horizon
  const auto m = TortoiseMap::build(SpacetimeProfile::build(VacuumLaw::born(1e10), hydrogen(), c));
  const auto k = m.at(150.0);
  CHECK(k.a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(k.b * 150.0 == doctest::Approx(c.alpha_s).epsilon(1e-3));
  CHECK(k.c * 150.0 == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(k.d) * 150.0 * 150.0 == doctest::Approx(std::sqrt(c.alpha_s)).epsilon(1e-3));  // Q
}

TEST_CASE("born law with negative bare mass has the alpha = 0 inner law") {
  PhysicalConstants c;
  const auto p = SpacetimeProfile::build(VacuumLaw::born(1e10), hydrogen(), c);
  REQUIRE(p.bare_mass() < 0);
  const auto m = TortoiseMap::build(p);
  CHECK(m.inner_slope() == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("horizon and small cutoff are refused") {
  PhysicalConstants c;
  c.gamma_pe = 1.0 / (c.alpha_s * c.epsilon);
  NucleusParams n;
  n.Z = 1;
  n.M_adm = 1.0;
  const auto p = SpacetimeProfile::build(VacuumLaw::maxwell(), n, c);
  CHECK_THROWS_AS(TortoiseMap::build(p), Error);
  PhysicalConstants c2;
  TortoiseOptions o;
  o.x_max = 100.0;
  CHECK_THROWS_AS(TortoiseMap::build(SpacetimeProfile::build(VacuumLaw::maxwell(), hydrogen(), c2), o), Error);
}
