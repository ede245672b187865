#include <doctest.h>

#include <cmath>

#include "gravdirac/bohr_sommerfeld.hpp"
#include "gravdirac/errors.hpp"

using namespace gravdirac;

namespace {

BSMinimum run(BSModel model, double Z, int n = 1) {
  BSProblem p;
  p.model = model;
  p.nucleus.Z = Z;
  p.n = n;
  return minimize(p);
}

// circular SR orbit: E = sqrt(1 - (Z alpha / n)^2)
double sr_closed(double Z, int n, double alpha) { return std::sqrt(1 - std::pow(Z * alpha / n, 2)); }

}  // namespace

TEST_CASE("SR ground state of hydrogen") {
  const double alpha = PhysicalConstants{}.alpha_s;
  const auto r = run(BSModel::SR, 1);
  CHECK_FALSE(r.unbounded);
  CHECK(r.E_star == doctest::Approx(std::sqrt(1 - alpha * alpha)).epsilon(1e-12));
  CHECK(r.rho_star == doctest::Approx(std::sqrt(1 - alpha * alpha) / alpha).epsilon(1e-6));
}

TEST_CASE("SR minimum matches the closed form below the catastrophe") {
  const double alpha = PhysicalConstants{}.alpha_s;
  for (double Z : {1.0, 20.0, 92.0, 136.0})
    for (int n : {1, 2, 3}) {
      INFO("Z = " << Z << " n = " << n);
      const auto r = run(BSModel::SR, Z, n);
      REQUIRE_FALSE(r.unbounded);
      CHECK(r.E_star == doctest::Approx(sr_closed(Z, n, alpha)).epsilon(1e-8));
    }
}

TEST_CASE("SR is unbounded above Z = 137 while GR_RWN keeps a minimum") {
  for (double Z : {1.0, 100.0, 137.0}) CHECK_FALSE(run(BSModel::SR, Z).unbounded);
  for (double Z : {138.0, 200.0}) {
    const auto r = run(BSModel::SR, Z);
    CHECK(r.unbounded);
    CHECK(std::isinf(r.E_star));
  }
  double prev = INFINITY;
  for (double Z : {200.0, 500.0, 1e3, 1e4}) {
    const auto r = run(BSModel::GR_RWN, Z);
    INFO("Z = " << Z);
    CHECK_FALSE(r.unbounded);
    CHECK(std::isfinite(r.E_star));
    CHECK(r.E_star < prev);
    prev = r.E_star;
  }
}

TEST_CASE("E star decreases with Z") {
  for (auto model : {BSModel::SR, BSModel::GR_RWN}) {
    double prev = INFINITY;
    for (double Z = 1; Z <= 137; Z += 8) {
      const double e = run(model, Z).E_star;
      CHECK(e < prev);
      prev = e;
    }
  }
}

TEST_CASE("GR_RWN energy function reduces to SR without gravity") {
  BSProblem sr, gr;
  sr.model = BSModel::SR;
  gr.model = BSModel::GR_RWN;
  sr.nucleus.Z = gr.nucleus.Z = 26;
  gr.consts.gamma_pe = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double rho = 1e-4 * std::pow(1e8, i / 99.0);
    CHECK(energy_function(gr, rho) == doctest::Approx(energy_function(sr, rho)).epsilon(1e-14));
  }
}

TEST_CASE("SR approaches Bohr to order alpha^4") {
  PhysicalConstants c0;
  c0.gamma_pe = 0.0;
  const double alpha = c0.alpha_s;
  for (double Z = 1; Z <= 10; ++Z)
    for (int n = 1; n <= 5; ++n) {
      NucleusParams nu;
      nu.Z = Z;
      const double bohr = bohr_energy(nu, c0, n, true);
      const double sr = run(BSModel::SR, Z, n).E_star - 1.0;
      CHECK(std::abs(sr - bohr) <= std::pow(Z * alpha / n, 4));
    }
}

TEST_CASE("Bohr energies") {
  PhysicalConstants c0;
  c0.gamma_pe = 0.0;
  NucleusParams h;
  h.Z = 1;
  h.N = 0;
  CHECK(bohr_energy(h, c0, 1, true) == doctest::Approx(-0.5 * c0.alpha_s * c0.alpha_s).epsilon(1e-14));
  // reduced mass lowers |E|
  CHECK(std::abs(bohr_energy(h, c0, 1)) < std::abs(bohr_energy(h, c0, 1, true)));
  const auto s = bohr_spectrum(h, c0, 6);
  for (int n = 1; n <= 6; ++n) CHECK(s[n - 1] * n * n == doctest::Approx(s[0]).epsilon(1e-14));
}

TEST_CASE("gravitational shift of Bohr levels is below 3e-39") {
  const PhysicalConstants c;
  Extended worst = 0;
  for (int Z = 1; Z <= 118; ++Z)
    for (int n = 1; n <= 5; ++n) {
      NucleusParams nu;
      nu.Z = Z;
      const auto s = bohr_relative_shift(nu, c, n);
      CHECK(s > 0);
      if (s > worst) worst = s;
    }
  CHECK(worst <= Extended(3e-39));
  CHECK(worst >= Extended(1e-40));
}

TEST_CASE("catastrophe thresholds") {
  const PhysicalConstants c;
  const auto sr = catastrophe_threshold(BSModel::SR, 1, c);
  CHECK(sr.finite_threshold);
  REQUIRE(sr.Z_star);
  CHECK(*sr.Z_star == 137);
  CHECK(*catastrophe_threshold(BSModel::SR, 2, c).Z_star == 274);
  const auto gr = catastrophe_threshold(BSModel::GR_RWN, 1, c);
  CHECK_FALSE(gr.finite_threshold);
  for (const auto& [Z, found] : gr.samples) CHECK(found);
}

TEST_CASE("nonlinear vacuum without bare mass keeps a minimum past 137") {
  const PhysicalConstants c;
  NucleusParams nb;
  nb.Z = 1;
  nb.N = 0;
  const auto pb = SpacetimeProfile::build(VacuumLaw::born(1e10), nb, c);
  const auto ct = catastrophe_threshold(BSModel::GR_NonlinearVacuum, 1, c, pb);
  REQUIRE(ct.inner_exponent);
  REQUIRE(ct.beta);
  CHECK(*ct.inner_exponent > *ct.beta);
  for (const auto& [Z, found] : ct.samples) CHECK(found);
  CHECK(zero_bare_mass_singularity_exponent(1.0) == doctest::Approx(1.0));
  CHECK(zero_bare_mass_singularity_exponent(0.5) == doctest::Approx(1.25));

  BSProblem q;
  q.model = BSModel::GR_NonlinearVacuum;
  q.nucleus = nb;
  q.profile = pb;
  const auto r = minimize(q);
  CHECK(r.E_star == doctest::Approx(std::sqrt(1 - c.alpha_s * c.alpha_s)).epsilon(1e-9));
}

TEST_CASE("model names and validation") {
  CHECK(parse_bs_model("GR_RWN") == BSModel::GR_RWN);
  CHECK_THROWS_AS(parse_bs_model("bogus"), Error);
  BSProblem p;
  p.n = 0;
  CHECK_THROWS_AS(p.validate(), Error);
  p.n = 1;
  p.model = BSModel::GR_NonlinearVacuum;
  CHECK_THROWS_AS(p.validate(), Error);  // needs a profile
}
