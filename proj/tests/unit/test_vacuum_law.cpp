#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "gravdirac/errors.hpp"
#include "gravdirac/vacuum_law.hpp"

using namespace gravdirac;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return g;
}

}  // namespace

TEST_CASE("maxwell evaluates to the linear law") {
  const auto z = VacuumLaw::maxwell().evaluate(3.0);
  CHECK(z.zeta == 3.0);
  CHECK(z.dzeta == 1.0);
  CHECK(z.d2zeta == 0.0);
}

TEST_CASE("born values against the closed form") {
  const auto law = VacuumLaw::born();
  const auto z = law.evaluate(4.0);
  CHECK(z.zeta == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(z.dzeta == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(z.d2zeta == doctest::Approx(-1.0 / 27.0).epsilon(1e-14));
  // zeta / mu -> 1 at small mu
  for (double mu : {1e-6, 1e-10, 1e-14}) CHECK(std::abs(law.zeta(mu) / mu - 1.0) < 2 * mu);
  // the small-mu form keeps full precision where sqrt(1 + 2 mu) - 1 would cancel
  CHECK(law.zeta(1e-300) == doctest::Approx(1e-300).epsilon(1e-14));
}

TEST_CASE("kink law and its derivative refusal") {
  const auto law = VacuumLaw::kink(4.0);
  CHECK(law.zeta(1.0) == 1.0);
  CHECK(law.zeta(16.0) == doctest::Approx(8.0));
  CHECK(law.evaluate(16.0).dzeta == doctest::Approx(0.25));
  CHECK(kind_of([&] { law.evaluate(4.0); }) == ErrorKind::DerivativeAtKink);
  CHECK(law.zeta(4.0) == 4.0);
}

TEST_CASE("negative argument is rejected") {
  CHECK(kind_of([] { VacuumLaw::maxwell().evaluate(-1.0); }) == ErrorKind::NegativeArgument);
  CHECK(kind_of([] { VacuumLaw::born().zeta(-1e-3); }) == ErrorKind::NegativeArgument);
}

TEST_CASE("built-in laws pass validation") {
  for (const auto& law : {VacuumLaw::maxwell(), VacuumLaw::born(), VacuumLaw::born(30.0),
                          VacuumLaw::kink(1.0), VacuumLaw::power_tail(0.7, 2.0),
                          VacuumLaw::power_tail(0.5, 1.0, 3.0)}) {
    const auto rep = validate(law);
    INFO(law.name());
    CHECK(rep.all_pass());
    CHECK(rep.conditions.size() >= 5);
  }
}

TEST_CASE("mu squared fails R1") {
  const auto law = VacuumLaw::custom([](double m) { return m * m; });
  const auto rep = validate(law);
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(rep.get("R1").pass);
  CHECK(rep.get("R1").first_violation.has_value());
}

TEST_CASE("sparse validation grid is refused") {
  CHECK(kind_of([] { validate(VacuumLaw::maxwell(), log_grid(1e-3, 1e3, 20)); }) ==
        ErrorKind::GridTooSparse);
}

TEST_CASE("exponents of the built-in laws") {
  auto check = [](const VacuumLaw& law, double a, double b) {
    const auto e = fit_exponents(law);
    CHECK(e.a == doctest::Approx(a).epsilon(1e-4));
    CHECK(e.b == doctest::Approx(b).epsilon(1e-4));
    CHECK(exponents_admissible(e));
  };
  check(VacuumLaw::maxwell(), 1.0, 1.0);
  check(VacuumLaw::born(), 1.0, 0.5);
  check(VacuumLaw::kink(1.0), 1.0, 0.5);
  check(VacuumLaw::power_tail(0.8, 3.0), 1.0, 0.8);
}

TEST_CASE("pure power law exponent is recovered to 1e-6") {
  for (double p : {0.5, 0.73, 1.0, 1.9}) {
    const auto law = VacuumLaw::custom([p](double m) { return 2.5 * std::pow(m, p); });
    CHECK(loglog_slope(law, 1e-20, 1e-16) == doctest::Approx(p).epsilon(1e-6));
    CHECK(loglog_slope(law, 1e100, 1e104) == doctest::Approx(p).epsilon(1e-6));
  }
}

TEST_CASE("sandwich bounds hold for every pair on the grid") {
  const auto grid = log_grid(1e-8, 1e8, 61);
  for (const auto& law : {VacuumLaw::maxwell(), VacuumLaw::born(), VacuumLaw::kink(3.0),
                          VacuumLaw::power_tail(0.6, 5.0)}) {
    INFO(law.name());
    bool ok = true;
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = i + 1; j < grid.size(); ++j) {
        const double r = law.zeta(grid[i]) / law.zeta(grid[j]);
        const double q = grid[i] / grid[j];
        if (r < q * (1 - 1e-12) || r > std::sqrt(q) * (1 + 1e-12)) ok = false;
      }
    CHECK(ok);
  }
}

TEST_CASE("derivative bounds zeta'(mu0) sqrt(mu0/mu) <= zeta'(mu) <= 1") {
  const auto grid = log_grid(1e-6, 1e6, 41);
  for (const auto& law : {VacuumLaw::born(), VacuumLaw::power_tail(0.75, 2.0)}) {
    bool ok = true;
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = i + 1; j < grid.size(); ++j) {
        const double d0 = law.evaluate(grid[i]).dzeta, d = law.evaluate(grid[j]).dzeta;
        if (d > 1.0 + 1e-12 || d < d0 * std::sqrt(grid[i] / grid[j]) * (1 - 1e-12)) ok = false;
      }
    CHECK(ok);
  }
}

TEST_CASE("custom law without derivatives uses central differences") {
  const auto law = VacuumLaw::custom([](double m) { return 2.0 * m / (std::sqrt(1.0 + 2.0 * m) + 1.0); });
  const auto born = VacuumLaw::born();
  for (double mu : {1e-3, 0.5, 4.0, 1e3}) {
    CHECK(law.evaluate(mu).dzeta == doctest::Approx(born.evaluate(mu).dzeta).epsilon(1e-9));
  }
  // second differences lose about eps^(1/3) / (mu^2 |zeta''| / zeta) in relative terms
  for (double mu : {0.5, 4.0, 1e3})
    CHECK(law.evaluate(mu).d2zeta == doctest::Approx(born.evaluate(mu).d2zeta).epsilon(1e-3));
}

TEST_CASE("tabulated csv law interpolates a born table") {
  const auto path = std::filesystem::temp_directory_path() / "gravdirac_born_table.csv";
  {
    std::ofstream f(path);
    for (double mu : log_grid(1e-10, 1e10, 201))
      f << mu << "," << 2.0 * mu / (std::sqrt(1.0 + 2.0 * mu) + 1.0) << "\n";
  }
  const auto law = VacuumLaw::tabulated_csv(path.string());
  const auto born = VacuumLaw::born();
  for (double mu : {3e-9, 0.37, 5.0, 2e8}) CHECK(law.zeta(mu) == doctest::Approx(born.zeta(mu)).epsilon(1e-4));
  CHECK(law.table_path() == path.string());
  const auto rep = validate(law);
  CHECK(rep.get("R1").pass);
  CHECK(rep.get("R2a").pass);
  std::filesystem::remove(path);
}

TEST_CASE("random power tails stay inside the admissible exponent box") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ub(0.5, 0.99), uc(0.5, 50.0);
  for (int i = 0; i < 5; ++i) {
    const auto law = VacuumLaw::power_tail(ub(rng), uc(rng));
    CHECK(validate(law).all_pass());
    CHECK(exponents_admissible(extract_exponents(law)));
  }
}
