#include "gravdirac/lpc.hpp"

#include <array>
#include <cmath>

#include "gravdirac/errors.hpp"

namespace gravdirac {

const char* to_string(LpcVerdict v) {
  return v == LpcVerdict::LimitPoint ? "LimitPoint" : "LimitCircle";
}

namespace {

using Vec = std::array<double, 2>;

// d g / d ln x for the unrotated system
//   g1' = -s g1 + (a + b + lambda) g2,  g2' = (a - b - lambda) g1 + s g2
Vec rhs(const TortoiseMap& map, int k, double mu, double lambda, double t, const Vec& g) {
  const double x = std::exp(t);
  const Coefficients c = map.at(x);
  const double s = k * c.c - mu * c.d;
  return {x * (-s * g[0] + (c.a + c.b + lambda) * g[1]),
          x * ((c.a - c.b - lambda) * g[0] + s * g[1])};
}

LpcSolution integrate_inward(const TortoiseMap& map, const RadialOperatorSpec& spec, double lambda,
                             double x_start, Vec g, const LpcOptions& opt) {
  LpcSolution sol;
  const double dt = -std::log(10.0) / opt.steps_per_decade;
  double t = std::log(x_start);
  double log_scale = 0.0;  // g_true = g * exp(log_scale)
  auto dens = [&](double tt, const Vec& v) {
    // |g|^2 dx = |g|^2 x dt
    return (v[0] * v[0] + v[1] * v[1]) * std::exp(tt);
  };
  for (int d = 0; d < opt.decades; ++d) {
    double acc = 0.0;  // in units of exp(2 log_scale_ref)
    const double ref = log_scale;
    double prev = dens(t, g);
    for (int i = 0; i < opt.steps_per_decade; ++i) {
      const Vec k1 = rhs(map, spec.k, spec.mu_a, lambda, t, g);
      Vec y2{g[0] + 0.5 * dt * k1[0], g[1] + 0.5 * dt * k1[1]};
      const Vec k2 = rhs(map, spec.k, spec.mu_a, lambda, t + 0.5 * dt, y2);
      Vec y3{g[0] + 0.5 * dt * k2[0], g[1] + 0.5 * dt * k2[1]};
      const Vec k3 = rhs(map, spec.k, spec.mu_a, lambda, t + 0.5 * dt, y3);
      Vec y4{g[0] + dt * k3[0], g[1] + dt * k3[1]};
      const Vec k4 = rhs(map, spec.k, spec.mu_a, lambda, t + dt, y4);
      for (int j = 0; j < 2; ++j) g[j] += dt / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
      t += dt;
      const double cur = dens(t, g);
      acc += 0.5 * (prev + cur) * (-dt) * std::exp(2.0 * (log_scale - ref));
      prev = cur;
      const double nrm = std::hypot(g[0], g[1]);
      if (!std::isfinite(nrm) || nrm == 0.0)
        fail(ErrorKind::StiffIntegrationFailure, "inward integration lost the solution");
      if (nrm > 1e100 || nrm < 1e-100) {
        g[0] /= nrm;
        g[1] /= nrm;
        log_scale += std::log(nrm);
        prev /= nrm * nrm;
      }
    }
    sol.decade_log10_norm.push_back((std::log(acc) + 2.0 * ref) / std::log(10.0));
  }
  const auto& v = sol.decade_log10_norm;
  const std::size_t m = v.size();
  const std::size_t span = std::min<std::size_t>(3, m - 1);
  sol.slope = (v[m - 1] - v[m - 1 - span]) / double(span);
  sol.square_integrable = sol.slope < -opt.slope_margin;
  return sol;
}

}  // namespace

LpcResult lpc_probe(const RadialOperatorSpec& spec, const TortoiseMap& map, const LpcOptions& opt) {
  spec.validate();
  if (opt.decades < 4 || opt.steps_per_decade < 50)
    fail(ErrorKind::InvalidArgument, "LPC probe needs >= 4 decades and >= 50 steps per decade");
  LpcResult res;
  res.lambda = spec.lambda_probe.value_or(0.0);
  const auto core = map.profile().core_radius();
  res.x_start = (core && !map.flat()) ? map.x_of_r(opt.r_start_factor * *core) : 1e-6;
  res.first = integrate_inward(map, spec, res.lambda, res.x_start, {1.0, 0.0}, opt);
  res.second = integrate_inward(map, spec, res.lambda, res.x_start, {0.0, 1.0}, opt);
  res.verdict = (res.first.square_integrable && res.second.square_integrable)
                    ? LpcVerdict::LimitCircle
                    : LpcVerdict::LimitPoint;
  return res;
}

}  // namespace gravdirac
