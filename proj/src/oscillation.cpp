#include "gravdirac/oscillation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "gravdirac/errors.hpp"

namespace gravdirac {

namespace odeint = boost::numeric::odeint;

const char* to_string(Branch b) { return b == Branch::Plus ? "Plus" : "Minus"; }
const char* to_string(Variant v) {
  switch (v) {
    case Variant::Center: return "Center";
    case Variant::EdgePlus: return "EdgePlus";
    case Variant::EdgeMinus: return "EdgeMinus";
  }
  return "?";
}
const char* to_string(Endpoint e) { return e == Endpoint::Zero ? "Zero" : "Infinity"; }
const char* to_string(OscVerdict v) {
  switch (v) {
    case OscVerdict::Oscillatory: return "Oscillatory";
    case OscVerdict::NonOscillatory: return "NonOscillatory";
    case OscVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

OscillationProblem OscillationProblem::from_map(const TortoiseMap& map, int k, double mu_a,
                                                Branch branch, Variant variant, double eps_edge) {
  if (!(eps_edge > 0.0 && eps_edge < 1.0))
    fail(ErrorKind::InvalidArgument, "eps_edge must lie in (0, 1)");
  OscillationProblem p;
  p.branch = branch;
  p.variant = variant;
  p.eps_edge = eps_edge;
  const double kk = k, mu = mu_a;
  p.coefficients = [map, kk, mu](double x, double& V1, double& V2, double& pp) {
    const Coefficients c = map.at(x);
    V1 = c.b + c.a - 1.0;
    V2 = c.b - c.a + 1.0;
    pp = -kk * c.c + mu * c.d;
  };
  const auto core = map.profile().core_radius();
  p.x_zero_start = (core && !map.flat()) ? map.x_of_r(1e-2 * *core) : 1e-6;
  return p;
}

OscillationProblem OscillationProblem::from_gamma(std::function<double(double)> g) {
  OscillationProblem p;
  p.gamma_override = std::move(g);
  return p;
}

void OscillationProblem::weights(double& c1, double& c2, double& d) const {
  switch (variant) {
    case Variant::Center:
      c1 = c2 = d = 1.0;
      break;
    case Variant::EdgePlus:
      c1 = 1.0 + eps_edge;
      c2 = d = 1.0 - eps_edge;
      break;
    case Variant::EdgeMinus:
      c1 = d = 1.0 - eps_edge;
      c2 = 1.0 + eps_edge;
      break;
  }
}

double gamma(const OscillationProblem& prob, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::OutOfRange, "x must be positive and finite");
  if (prob.gamma_override) return prob.gamma_override(x);
  if (!prob.coefficients) fail(ErrorKind::InvalidArgument, "oscillation problem has no coefficients");
  double c1 = 1.0, c2 = 1.0, d = 1.0;
  prob.weights(c1, c2, d);
  double V1, V2, p;
  prob.coefficients(x, V1, V2, p);
  // p' by a central difference on a relative step
  const double h = 1e-5;
  double a1, a2, pl, pr;
  prob.coefficients(x * (1.0 - h), a1, a2, pl);
  prob.coefficients(x * (1.0 + h), a1, a2, pr);
  const double dp = (pr - pl) / (2.0 * h * x);
  if (prob.branch == Branch::Plus) return (V2 - c2) * (V2 - c2) - d * d + p * p + dp;
  return (c1 + V1) * (c1 + V1) - d * d + p * p - dp;
}

namespace {

void asymptotic_tier(const OscillationProblem& prob, Endpoint ep, const OscillationOptions& opt,
                     OscillationEvidence& ev) {
  const double x_a = ep == Endpoint::Infinity ? opt.x_inf_start : prob.x_zero_start;
  for (int j = 0; j <= opt.decades; ++j) {
    const double x = ep == Endpoint::Infinity ? x_a * std::pow(10.0, j) : x_a * std::pow(10.0, -j);
    ev.x_samples.push_back(x);
    ev.x2_gamma.push_back(x * x * gamma(prob, x));
  }
  const auto& y = ev.x2_gamma;
  const std::size_t n = y.size();
  if (n < 5) return;
  bool diverging = true;
  for (std::size_t j = n - 3; j < n; ++j)
    if (!(y[j] / y[j - 1] > 1.5 && std::abs(y[j]) > 1.0)) diverging = false;
  if (diverging) {
    ev.L = std::copysign(INFINITY, y[n - 1]);
  } else {
    auto aitken = [&](std::size_t i) {
      const double d1 = y[i + 1] - y[i], d2 = y[i + 2] - y[i + 1];
      const double den = d2 - d1;
      if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(y[i + 2]))) return y[i + 2];
      return y[i + 2] - d2 * d2 / den;
    };
    const double L1 = aitken(n - 3), L0 = aitken(n - 4);
    ev.L = L1;
    if (!std::isfinite(L1) || std::abs(L1 - L0) > 0.5 * opt.margin) ev.extrapolation_unstable = true;
  }
  if (ev.extrapolation_unstable) return;
  const double L = *ev.L;
  if (L < -0.25 - opt.margin)
    ev.tier1 = OscVerdict::Oscillatory;
  else if (L > -0.25 + opt.margin)
    ev.tier1 = OscVerdict::NonOscillatory;
}

// Pruefer angle of -z'' + Gamma z = 0 in t = ln x:
//   theta_t = cos^2 - sin cos - x^2 Gamma sin^2
void direct_tier(const OscillationProblem& prob, Endpoint ep, const OscillationOptions& opt,
                 OscillationEvidence& ev) {
  using State = std::array<double, 1>;
  const bool inf = ep == Endpoint::Infinity;
  const double x_a = inf ? opt.x_inf_start : prob.x_zero_start;
  int intervals = opt.dyadic_intervals;
  if (inf) {
    const int cap = int(std::floor(std::log2(opt.x_inf_cap / x_a)));
    intervals = std::max(4, std::min(intervals, cap));
  }
  const double dir = inf ? 1.0 : -1.0;
  auto rhs = [&](const State& s, State& ds, double t) {
    const double x = std::exp(t);
    const double sn = std::sin(s[0]), cs = std::cos(s[0]);
    ds[0] = cs * cs - sn * cs - x * x * gamma(prob, x) * sn * sn;
  };
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-9, 1e-9);
  State th{0.25 * std::numbers::pi};
  double t = std::log(x_a);
  std::vector<double> angles{th[0]};
  for (int i = 0; i < intervals; ++i) {
    const double t1 = t + dir * std::log(2.0);
    try {
      odeint::integrate_adaptive(stepper, rhs, th, t, t1, dir * 1e-3);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      fail(ErrorKind::IntegratorStep, std::string("oscillation integration: ") + e.what());
    }
    t = t1;
    angles.push_back(th[0]);
    const int cnt = int(std::abs(std::floor(angles.back() / std::numbers::pi) - std::floor(angles[i] / std::numbers::pi)));
    ev.sign_changes.push_back(cnt);
    // enough evidence once the count per interval is large
    if (cnt >= 50 && i >= 3) break;
  }
  const std::size_t m = ev.sign_changes.size();
  const std::size_t half = m / 2;
  int tail = 0;
  for (std::size_t i = half; i < m; ++i) tail += ev.sign_changes[i];
  const double dt = double(m - half) * std::log(2.0);
  ev.zero_rate = std::abs(angles[m] - angles[half]) / (std::numbers::pi * dt);
  if (tail >= 3)
    ev.tier2 = OscVerdict::Oscillatory;
  else if (tail == 0)
    ev.tier2 = OscVerdict::NonOscillatory;
}

}  // namespace

OscillationEvidence is_oscillatory(const OscillationProblem& prob, Endpoint endpoint,
                                   const OscillationOptions& opt) {
  if (opt.decades < 6) fail(ErrorKind::InvalidArgument, "need at least 6 decades toward the endpoint");
  OscillationEvidence ev;
  ev.endpoint = endpoint;
  asymptotic_tier(prob, endpoint, opt, ev);
  direct_tier(prob, endpoint, opt, ev);

  if (endpoint == Endpoint::Zero && prob.coefficients) {
    double c1 = 1.0, c2 = 1.0, d = 1.0;
    prob.weights(c1, c2, d);
    bool all = true;
    for (std::size_t j = ev.x_samples.size() - 3; j < ev.x_samples.size(); ++j) {
      const double x = ev.x_samples[j];
      double V1, V2, p;
      prob.coefficients(x, V1, V2, p);
      const double nu = 0.5 * (V1 + V2 + c1 - c2);
      if (!(x * (p + nu) <= -1.0 || x * (p - nu) <= -1.0)) all = false;
    }
    ev.p_nu_criterion = all;
  }

  if (ev.tier1 && ev.tier2)
    ev.verdict = (*ev.tier1 == *ev.tier2) ? *ev.tier1 : OscVerdict::Inconclusive;
  else if (ev.tier1)
    ev.verdict = *ev.tier1;
  else if (ev.tier2)
    ev.verdict = *ev.tier2;
  else
    ev.verdict = OscVerdict::Inconclusive;
  return ev;
}

AccumulationEvidence classify_accumulation_via_oscillation(const TortoiseMap& map, double mu_a,
                                                           double eps_edge, int k,
                                                           const OscillationOptions& opt) {
  AccumulationEvidence out;
  const auto plus = OscillationProblem::from_map(map, k, mu_a, Branch::Plus, Variant::EdgePlus, eps_edge);
  const auto minus =
      OscillationProblem::from_map(map, k, mu_a, Branch::Minus, Variant::EdgeMinus, eps_edge);
  out.plus_zero = is_oscillatory(plus, Endpoint::Zero, opt);
  out.plus_inf = is_oscillatory(plus, Endpoint::Infinity, opt);
  out.minus_zero = is_oscillatory(minus, Endpoint::Zero, opt);
  out.minus_inf = is_oscillatory(minus, Endpoint::Infinity, opt);

  // the x^-2 coefficient near 0 at critical beta: L = C^2 +- C, never below -1/4
  if (mu_a != 0.0 && !map.flat()) {
    try {
      const RegimeParams rp = regime_params(map.profile());
      if (std::abs(rp.beta - 0.5 * (1.0 + rp.alpha)) < 1e-4) {
        const double C = 0.5 * moment_ratio(rp.alpha, rp.C0, rp.Cbeta_prime, rp.G, mu_a);
        out.analytic_coefficient = C;
        if (std::abs(C - 0.5) <= 0.5e-9) out.flags.push_back("moment_ratio_equals_one");
      }
    } catch (const Error&) {
    }
  }

  auto osc = [&](const OscillationEvidence& e) { return e.verdict == OscVerdict::Oscillatory; };
  for (const auto* e : {&out.plus_zero, &out.plus_inf, &out.minus_zero, &out.minus_inf})
    if (e->verdict == OscVerdict::Inconclusive) out.inconclusive = true;
  if (osc(out.plus_zero) || osc(out.plus_inf)) out.points.push_back(1);
  if (osc(out.minus_zero) || osc(out.minus_inf)) out.points.push_back(-1);
  return out;
}

}  // namespace gravdirac
