#include "gravdirac/tortoise.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "gravdirac/errors.hpp"

namespace gravdirac {

struct TortoiseMap::Data {
  explicit Data(SpacetimeProfile p) : profile(std::move(p)) {}

  SpacetimeProfile profile;
  bool flat = false;
  double x_max = 0.0;
  std::size_t n_nodes = 0;
  double e = 0.0;
  double inner_exp = 0.5;  // 1/(2 + alpha)
  std::vector<double> lr, lx, slope;  // slope = d ln x / d ln r
  double inner_slope = 0.5;
};

namespace {

double hermite_at(const std::vector<double>& X, const std::vector<double>& Y,
                  const std::vector<double>& dY, std::size_t i, double t) {
  const double h = X[i + 1] - X[i];
  const double s = (t - X[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * Y[i] + (s3 - 2 * s2 + s) * h * dY[i] +
         (-2 * s3 + 3 * s2) * Y[i + 1] + (s3 - s2) * h * dY[i + 1];
}

std::size_t locate(const std::vector<double>& X, double t) {
  auto it = std::upper_bound(X.begin(), X.end(), t);
  std::size_t i = it == X.begin() ? 0 : std::size_t(it - X.begin()) - 1;
  return std::min(i, X.size() - 2);
}

}  // namespace

TortoiseMap TortoiseMap::build(const SpacetimeProfile& profile, const TortoiseOptions& opt) {
  if (!(opt.x_max >= 200.0)) fail(ErrorKind::InvalidArgument, "x_max must be >= 200");
  if (opt.n_nodes < 10000) fail(ErrorKind::InvalidArgument, "n_nodes must be >= 1e4");
  if (profile.horizon().kind != HorizonKind::None)
    fail(ErrorKind::HorizonPresent, "tortoise map needs a horizon-free profile");

  auto d = std::make_shared<Data>(profile);
  d->x_max = opt.x_max;
  d->n_nodes = opt.n_nodes;
  d->e = profile.constants().e();
  d->flat = !(profile.G() > 0.0);
  if (d->flat) return TortoiseMap(d);

  const auto core = profile.core_radius();
  const double alpha = core ? profile.singularity().alpha : 0.0;
  d->inner_exp = core ? 1.0 / (2.0 + alpha) : 1.0;
  const double r_lo = core ? 1e-15 * *core : 1e-14;

  using GL = boost::math::quadrature::gauss<double, 8>;
  const auto& gx = GL::abscissa();
  const auto& gw = GL::weights();
  const double dl = std::log(10.0) / opt.per_decade;

  auto push = [&](double lr, double x) {
    const double r = std::exp(lr);
    d->lr.push_back(lr);
    d->lx.push_back(std::log(x));
    d->slope.push_back(r / (x * profile.f2(r)));
  };

  // innermost node: f^2 ~ K r^-(1+alpha) there, so x = r / ((2+alpha) f^2)
  double x = r_lo / (profile.f2(r_lo) / d->inner_exp);
  double lr = std::log(r_lo);
  push(lr, x);
  const double target = 1.05 * opt.x_max + 10.0;
  while (x < target) {
    // cumulative Gauss-Legendre in ln s over [lr, lr + dl]
    double sum = 0.0;
    const double mid = lr + 0.5 * dl;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      for (int sgn : {-1, 1}) {
        if (gx[i] == 0.0 && sgn > 0) continue;
        const double s = std::exp(mid + sgn * 0.5 * dl * gx[i]);
        sum += gw[i] * s / profile.f2(s);
      }
    }
    x += 0.5 * dl * sum;
    lr += dl;
    push(lr, x);
    if (d->lr.size() > 200000) fail(ErrorKind::IntegratorStep, "tortoise table did not reach x_max");
  }

  const std::size_t k = std::min<std::size_t>(opt.per_decade, d->lr.size() - 1);
  d->inner_slope = (d->lr[k] - d->lr[0]) / (d->lx[k] - d->lx[0]);
  if (core && std::abs(d->inner_slope - d->inner_exp) > 1e-2)
    fail(ErrorKind::SeriesMatchFailure, "inner exponent of r(x) inconsistent with alpha");
  return TortoiseMap(d);
}

TortoiseMap build_tortoise(const SpacetimeProfile& profile, double x_max, std::size_t n_nodes) {
  TortoiseOptions o;
  o.x_max = x_max;
  o.n_nodes = n_nodes;
  return TortoiseMap::build(profile, o);
}

const SpacetimeProfile& TortoiseMap::profile() const { return d_->profile; }
bool TortoiseMap::flat() const { return d_->flat; }
double TortoiseMap::x_max() const { return d_->x_max; }
std::size_t TortoiseMap::n_nodes() const { return d_->n_nodes; }
double TortoiseMap::inner_slope() const { return d_->flat ? 1.0 : d_->inner_slope; }
double TortoiseMap::x_table_min() const { return d_->flat ? 0.0 : std::exp(d_->lx.front()); }

double TortoiseMap::r_of_x(double x) const {
  if (!(x > 0.0)) fail(ErrorKind::OutOfRange, "x must be positive");
  if (d_->flat) return x;
  const auto& D = *d_;
  const double t = std::log(x);
  if (t < D.lx.front()) return std::exp(D.lr.front() + D.inner_exp * (t - D.lx.front()));
  if (t > D.lx.back()) {
    // f -> 1 far out
    const double r_hi = std::exp(D.lr.back());
    return r_hi + (x - std::exp(D.lx.back())) * D.profile.f2(r_hi);
  }
  const std::size_t i = locate(D.lx, t);
  const double h = D.lx[i + 1] - D.lx[i];
  const double s = (t - D.lx[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double lr = (2 * s3 - 3 * s2 + 1) * D.lr[i] + (s3 - 2 * s2 + s) * h / D.slope[i] +
                    (-2 * s3 + 3 * s2) * D.lr[i + 1] + (s3 - s2) * h / D.slope[i + 1];
  return std::exp(lr);
}

double TortoiseMap::x_of_r(double r) const {
  if (!(r > 0.0)) fail(ErrorKind::OutOfRange, "r must be positive");
  if (d_->flat) return r;
  const auto& D = *d_;
  const double t = std::log(r);
  if (t < D.lr.front()) return std::exp(D.lx.front() + (t - D.lr.front()) / D.inner_exp);
  if (t > D.lr.back()) {
    const double r_hi = std::exp(D.lr.back());
    return std::exp(D.lx.back()) + (r - r_hi) / D.profile.f2(r_hi);
  }
  return std::exp(hermite_at(D.lr, D.lx, D.slope, locate(D.lr, t), t));
}

Coefficients TortoiseMap::at(double x) const {
  Coefficients c;
  const auto& p = d_->profile;
  c.r = r_of_x(x);
  c.f2 = d_->flat ? 1.0 : p.f2(c.r);
  const double f = std::sqrt(c.f2);
  c.a = f;
  c.b = d_->e * p.phi(c.r);
  c.c = f / c.r;
  c.d = p.dphi(c.r) * f;
  return c;
}

}  // namespace gravdirac
