#include "gravdirac/vacuum_law.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

// pchip.hpp calls unqualified isnan
#include <math.h>
#include <boost/math/interpolators/pchip.hpp>

#include "gravdirac/errors.hpp"

namespace gravdirac {

namespace {

using Pchip = boost::math::interpolators::pchip<std::vector<double>>;

const double kCbrtEps = std::cbrt(std::numeric_limits<double>::epsilon());

}  // namespace

struct VacuumLaw::Impl {
  LawKind kind = LawKind::Maxwell;
  double beta_f = 1.0;  // Born field strength
  double mu1 = 1.0;     // Kink
  double b = 1.0, c_b = 1.0, tau = 2.0, mu_t = 1.0;  // PowerTail
  Fn f, df, d2f;
  std::optional<Exponents> declared;
  std::shared_ptr<Pchip> table;
  double tab_lo = 0, tab_hi = 0, slope_lo = 1, slope_hi = 1;
  std::string path;
};

const char* to_string(LawKind kind) {
  switch (kind) {
    case LawKind::Maxwell: return "maxwell";
    case LawKind::Born: return "born";
    case LawKind::Kink: return "kink";
    case LawKind::PowerTail: return "power_tail";
    case LawKind::Custom: return "custom";
  }
  return "?";
}

VacuumLaw VacuumLaw::maxwell() {
  auto p = std::make_shared<Impl>();
  p->kind = LawKind::Maxwell;
  p->declared = Exponents{1.0, 1.0};
  return VacuumLaw(p);
}

VacuumLaw VacuumLaw::born(double field_strength) {
  if (!(field_strength > 0.0)) fail(ErrorKind::InvalidArgument, "Born field strength must be positive");
  auto p = std::make_shared<Impl>();
  p->kind = LawKind::Born;
  p->beta_f = field_strength;
  p->declared = Exponents{1.0, 0.5};
  return VacuumLaw(p);
}

VacuumLaw VacuumLaw::kink(double mu1) {
  if (!(mu1 > 0.0)) fail(ErrorKind::InvalidArgument, "kink point must be positive");
  auto p = std::make_shared<Impl>();
  p->kind = LawKind::Kink;
  p->mu1 = mu1;
  p->declared = Exponents{1.0, 0.5};
  return VacuumLaw(p);
}

VacuumLaw VacuumLaw::power_tail(double b, double c_b, double tau) {
  if (!(b >= 0.5 && b <= 1.0)) fail(ErrorKind::InvalidArgument, "power tail exponent must lie in [1/2, 1]");
  if (!(c_b > 0.0)) fail(ErrorKind::InvalidArgument, "tail coefficient must be positive");
  if (!(tau >= 2.0)) fail(ErrorKind::InvalidArgument, "tail width must be >= 2");
  if (b == 1.0 && c_b != 1.0) fail(ErrorKind::InvalidArgument, "b = 1 requires c_b = 1");
  auto p = std::make_shared<Impl>();
  p->kind = LawKind::PowerTail;
  p->b = b;
  p->c_b = c_b;
  p->tau = tau;
  p->mu_t = b < 1.0 ? std::pow(c_b * std::exp(-2.0 * tau * (1.0 - b)), 1.0 / (1.0 - b)) : 1.0;
  p->declared = Exponents{1.0, b};
  return VacuumLaw(p);
}

VacuumLaw VacuumLaw::power_tail_from_transition(double b, double mu_t, double tau) {
  if (!(mu_t > 0.0)) fail(ErrorKind::InvalidArgument, "transition must be positive");
  double c_b = std::pow(mu_t, 1.0 - b) * std::exp(2.0 * tau * (1.0 - b));
  VacuumLaw law = power_tail(b, b < 1.0 ? c_b : 1.0, tau);
  auto p = std::make_shared<Impl>(*law.impl_);
  p->mu_t = mu_t;
  return VacuumLaw(p);
}

VacuumLaw VacuumLaw::custom(Fn zeta, Fn dzeta, Fn d2zeta, std::optional<Exponents> declared) {
  if (!zeta) fail(ErrorKind::InvalidArgument, "custom law needs a zeta callable");
  auto p = std::make_shared<Impl>();
  p->kind = LawKind::Custom;
  p->f = std::move(zeta);
  p->df = std::move(dzeta);
  p->d2f = std::move(d2zeta);
  p->declared = declared;
  return VacuumLaw(p);
}

VacuumLaw VacuumLaw::tabulated(std::vector<double> mu, std::vector<double> zeta) {
  if (mu.size() != zeta.size() || mu.size() < 4)
    fail(ErrorKind::InvalidArgument, "tabulated law needs at least 4 (mu, zeta) pairs");
  std::vector<std::size_t> order(mu.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return mu[a] < mu[b]; });
  std::vector<double> lx, ly;
  for (auto i : order) {
    if (!(mu[i] > 0.0) || !(zeta[i] > 0.0))
      fail(ErrorKind::InvalidArgument, "tabulated mu and zeta must be positive");
    if (!lx.empty() && std::log(mu[i]) <= lx.back())
      fail(ErrorKind::InvalidArgument, "tabulated mu values must be distinct");
    lx.push_back(std::log(mu[i]));
    ly.push_back(std::log(zeta[i]));
  }
  auto p = std::make_shared<Impl>();
  p->kind = LawKind::Custom;
  p->tab_lo = lx.front();
  p->tab_hi = lx.back();
  p->table = std::make_shared<Pchip>(std::move(lx), std::move(ly));
  p->slope_lo = p->table->prime(p->tab_lo);
  p->slope_hi = p->table->prime(p->tab_hi);
  return VacuumLaw(p);
}

VacuumLaw VacuumLaw::tabulated_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open law table " + path);
  std::vector<double> mu, zeta;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b;
    if (ss >> a >> b) {
      mu.push_back(a);
      zeta.push_back(b);
    }
  }
  VacuumLaw law = tabulated(std::move(mu), std::move(zeta));
  auto p = std::make_shared<Impl>(*law.impl_);
  p->path = path;
  return VacuumLaw(p);
}

LawKind VacuumLaw::kind() const { return impl_->kind; }
std::string VacuumLaw::name() const { return to_string(impl_->kind); }
std::optional<Exponents> VacuumLaw::declared_exponents() const { return impl_->declared; }
double VacuumLaw::field_strength() const { return impl_->beta_f; }
double VacuumLaw::mu1() const { return impl_->mu1; }
double VacuumLaw::tail_b() const { return impl_->b; }
double VacuumLaw::tail_cb() const { return impl_->c_b; }
double VacuumLaw::tail_tau() const { return impl_->tau; }
double VacuumLaw::transition() const { return impl_->mu_t; }
const std::string& VacuumLaw::table_path() const { return impl_->path; }
bool VacuumLaw::is_tabulated() const { return static_cast<bool>(impl_->table); }

std::optional<double> VacuumLaw::tail_coefficient() const {
  switch (impl_->kind) {
    case LawKind::Maxwell: return 1.0;
    case LawKind::Born: return std::sqrt(2.0) * impl_->beta_f;
    case LawKind::Kink: return std::sqrt(impl_->mu1);
    case LawKind::PowerTail: return impl_->c_b;
    case LawKind::Custom: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<double> VacuumLaw::breakpoints() const {
  switch (impl_->kind) {
    case LawKind::Kink: return {impl_->mu1};
    case LawKind::PowerTail: return impl_->b < 1.0 ? std::vector<double>{impl_->mu_t} : std::vector<double>{};
    case LawKind::Born: return {impl_->beta_f * impl_->beta_f};
    default: return {};
  }
}

namespace {

ZetaValues eval_power_tail(const VacuumLaw::Impl& p, double mu) {
  if (p.b >= 1.0 || mu <= p.mu_t) return {mu, 1.0, 0.0};
  const double t = std::log(mu / p.mu_t);
  const double s = 1.0 - p.b;
  const double et = std::exp(-t / p.tau);
  const double S = 1.0 - (1.0 + t / p.tau) * et;
  const double I = t - 2.0 * p.tau + et * (2.0 * p.tau + t);
  const double dS = t / (p.tau * p.tau) * et;
  const double z = p.mu_t * std::exp(t - s * I);
  const double e = 1.0 - s * S;
  const double de = -s * dS;
  const double dz = e * z / mu;
  const double d2z = z / (mu * mu) * (de + e * e - e);
  return {z, dz, d2z};
}

double log_table(const VacuumLaw::Impl& p, double lm, double* slope) {
  if (lm < p.tab_lo) {
    *slope = p.slope_lo;
    return (*p.table)(p.tab_lo) + p.slope_lo * (lm - p.tab_lo);
  }
  if (lm > p.tab_hi) {
    *slope = p.slope_hi;
    return (*p.table)(p.tab_hi) + p.slope_hi * (lm - p.tab_hi);
  }
  *slope = p.table->prime(lm);
  return (*p.table)(lm);
}

}  // namespace

double VacuumLaw::zeta(double mu) const {
  const Impl& p = *impl_;
  if (mu < 0.0) fail(ErrorKind::NegativeArgument, "mu < 0");
  switch (p.kind) {
    case LawKind::Maxwell: return mu;
    case LawKind::Born: {
      const double b2 = p.beta_f * p.beta_f;
      return 2.0 * mu / (std::sqrt(1.0 + 2.0 * mu / b2) + 1.0);
    }
    case LawKind::Kink: return std::min(mu, std::sqrt(p.mu1 * mu));
    case LawKind::PowerTail: return eval_power_tail(p, mu).zeta;
    case LawKind::Custom:
      if (p.table) {
        if (mu == 0.0) return 0.0;
        double s;
        return std::exp(log_table(p, std::log(mu), &s));
      }
      return p.f(mu);
  }
  return 0.0;
}

double VacuumLaw::dzeta(double mu) const {
  if (impl_->kind == LawKind::Kink && mu == impl_->mu1) return 0.5;
  return evaluate(mu).dzeta;
}

ZetaValues VacuumLaw::evaluate(double mu) const {
  const Impl& p = *impl_;
  if (mu < 0.0 || std::isnan(mu)) fail(ErrorKind::NegativeArgument, "mu < 0");
  switch (p.kind) {
    case LawKind::Maxwell: return {mu, 1.0, 0.0};
    case LawKind::Born: {
      const double b2 = p.beta_f * p.beta_f;
      const double w = 1.0 + 2.0 * mu / b2;
      const double sw = std::sqrt(w);
      return {2.0 * mu / (sw + 1.0), 1.0 / sw, -1.0 / (b2 * w * sw)};
    }
    case LawKind::Kink: {
      if (mu == p.mu1) fail(ErrorKind::DerivativeAtKink, "derivative requested at the kink");
      if (mu < p.mu1) return {mu, 1.0, 0.0};
      const double z = std::sqrt(p.mu1 * mu);
      return {z, 0.5 * z / mu, -0.25 * z / (mu * mu)};
    }
    case LawKind::PowerTail: return eval_power_tail(p, mu);
    case LawKind::Custom: break;
  }
  if (p.table) {
    if (mu == 0.0) return {0.0, std::exp(p.table->operator()(p.tab_lo) - p.tab_lo), 0.0};
    auto first = [&](double m) {
      double s;
      const double z = std::exp(log_table(p, std::log(m), &s));
      return z * s / m;
    };
    double s;
    const double z = std::exp(log_table(p, std::log(mu), &s));
    const double h = mu * kCbrtEps;
    return {z, z * s / mu, (first(mu + h) - first(mu - h)) / (2.0 * h)};
  }
  const double z = p.f(mu);
  const double h = std::max(mu, std::numeric_limits<double>::min() * 1e10) * kCbrtEps;
  double d1, d2;
  if (p.df) {
    d1 = p.df(mu);
  } else if (mu > h) {
    d1 = (p.f(mu + h) - p.f(mu - h)) / (2.0 * h);
  } else {
    d1 = (p.f(mu + h) - z) / h;
  }
  if (p.d2f) {
    d2 = p.d2f(mu);
  } else if (p.df) {
    d2 = mu > h ? (p.df(mu + h) - p.df(mu - h)) / (2.0 * h) : (p.df(mu + h) - d1) / h;
  } else {
    d2 = mu > h ? (p.f(mu + h) - 2.0 * z + p.f(mu - h)) / (h * h) : 0.0;
  }
  return {z, d1, d2};
}

// ---------------------------------------------------------------------------

bool ValidationReport::all_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.pass; });
}

const ConditionResult& ValidationReport::get(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return c;
  fail(ErrorKind::InvalidArgument, "no condition " + name);
}

std::vector<double> default_validation_grid() {
  std::vector<double> g(121);
  for (int i = 0; i < 121; ++i) g[i] = std::pow(10.0, -8.0 + 16.0 * i / 120.0);
  return g;
}

ValidationReport validate(const VacuumLaw& law, const std::vector<double>& mu_grid) {
  std::vector<double> grid = mu_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::remove_if(grid.begin(), grid.end(), [](double m) { return !(m > 0.0); }), grid.end());
  if (grid.size() < 2 || grid.front() > 1e-6 || grid.back() < 1e6 ||
      std::log10(grid.back() / grid.front()) < 6.0)
    fail(ErrorKind::GridTooSparse, "grid must span six decades including mu < 1e-6 and mu > 1e6");

  constexpr double slack = 1e-12;
  constexpr double tol_r1 = 1e-6;
  const bool tabulated = law.is_tabulated();

  auto named = [](const char* n) {
    ConditionResult c;
    c.name = n;
    return c;
  };
  ConditionResult r1 = named("R1"), r2a = named("R2a"), r2b = named("R2b"), r3 = named("R3"),
                  sand = named("sandwich");
  auto violate = [](ConditionResult& c, double mu) {
    if (c.pass) c.first_violation = mu;
    c.pass = false;
  };

  for (std::size_t i = 0; i < std::min<std::size_t>(3, grid.size()); ++i) {
    const double mu = grid[i];
    if (!(std::abs(law.zeta(mu) / mu - 1.0) < tol_r1)) violate(r1, mu);
  }

  std::vector<double> z(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double mu = grid[i];
    z[i] = law.zeta(mu);
    if (law.kind() == LawKind::Kink && mu == law.mu1()) continue;
    const ZetaValues v = law.evaluate(mu);
    if (!(v.zeta > 0.0 && v.dzeta > 0.0)) violate(r2a, mu);
    if (v.zeta - mu * v.dzeta < -slack * std::max(1.0, v.zeta)) violate(r2b, mu);
    const double r3v = v.dzeta + 2.0 * mu * v.d2zeta;
    if (r3v < -slack) {
      // interpolated tables get a relative allowance before failing
      if (tabulated && r3v > -1e-6 * std::abs(v.dzeta)) {
        if (!r3.flagged) r3.first_violation = mu;
        r3.flagged = true;
      } else {
        violate(r3, mu);
      }
    }
  }

  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double ratio_mu = grid[i] / grid[j];
      const double ratio_z = z[i] / z[j];
      if (ratio_mu > ratio_z + slack || ratio_z > std::sqrt(ratio_mu) + slack) {
        violate(sand, grid[j]);
        break;
      }
    }
  }

  ValidationReport rep;
  rep.conditions = {r1, r2a, r2b, r3, sand};
  return rep;
}

double loglog_slope(const VacuumLaw& law, double lo, double hi, int points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int i = 0; i < points; ++i) {
    const double x = l0 + (l1 - l0) * i / (points - 1);
    const double y = std::log(law.zeta(std::exp(x)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = points;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

double stable_slope(const VacuumLaw& law, double lo, double hi, double tol) {
  const double whole = loglog_slope(law, lo, hi);
  const int decades = std::max(1, static_cast<int>(std::round(std::log10(hi / lo))));
  for (int d = 0; d < decades; ++d) {
    const double a = lo * std::pow(10.0, d), b = lo * std::pow(10.0, d + 1);
    const double s = loglog_slope(law, a, b, 11);
    if (std::abs(s - whole) > tol)
      fail(ErrorKind::SlopeUnstable, "log-log slope varies across sub-windows");
  }
  return whole;
}

}  // namespace

Exponents fit_exponents(const VacuumLaw& law, const ExponentWindows& w) {
  return {stable_slope(law, w.small_lo, w.small_hi, w.tol),
          stable_slope(law, w.large_lo, w.large_hi, w.tol)};
}

Exponents extract_exponents(const VacuumLaw& law, const ExponentWindows& w) {
  if (auto d = law.declared_exponents()) return *d;
  return fit_exponents(law, w);
}

bool exponents_admissible(const Exponents& e, double tol) {
  return std::abs(e.a - 1.0) <= tol && e.b >= 0.5 - tol && e.b <= 1.0 + tol;
}

}  // namespace gravdirac
