#include "gravdirac/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "gravdirac/errors.hpp"

namespace gravdirac {

namespace odeint = boost::numeric::odeint;

double outer_cutoff(double hi) {
  const double kappa = std::sqrt(std::max(0.0, 1.0 - hi * hi));
  if (kappa <= 0.0) fail(ErrorKind::WindowAtEdge, "no finite cutoff at the continuum edge");
  return std::max(200.0, std::log(1e12) / kappa);
}

void check_window(double lo, double hi, double edge_tol) {
  if (!(lo < hi)) fail(ErrorKind::InvalidArgument, "window must satisfy lo < hi");
  if (!(lo > -1.0 + edge_tol && hi < 1.0 - edge_tol))
    fail(ErrorKind::WindowAtEdge, "window endpoint within edge tolerance of +-1");
}

namespace {

double wall_position(const DiracGrid& g, double theta) {
  std::size_t wall = g.y.size() - 1;
  if ((wall % 2 == 0) != outer_wall_on_h2(theta)) --wall;
  return g.y[wall];
}

double nearest(const std::vector<double>& v, double x) {
  double best = std::numeric_limits<double>::quiet_NaN(), dist = INFINITY;
  for (double e : v)
    if (std::abs(e - x) < dist) {
      dist = std::abs(e - x);
      best = e;
    }
  return best;
}

}  // namespace

double prufer_angle(const RadialOperatorSpec& spec, const TortoiseMap& map, double x0, double X,
                    double lambda) {
  const double c2 = std::cos(2.0 * spec.theta), s2 = std::sin(2.0 * spec.theta);
  const double k = spec.k, mu = spec.mu_a;
  auto F = [&](double x, double psi) {
    const Coefficients c = map.at(x);
    const double s = k * c.c - mu * c.d;
    const double a11 = c.a * c2 - s * s2, a12 = c.a * s2 + s * c2;
    return -c.b - lambda + a11 * std::cos(2.0 * psi) + a12 * std::sin(2.0 * psi);
  };
  using State = std::array<double, 1>;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-10, 1e-10);
  State psi{0.0};
  const double x_mid = std::min(1.0, X);
  try {
    if (x0 < x_mid) {
      // t = ln x near the singular end
      auto rhs_t = [&](const State& p, State& dp, double t) {
        const double x = std::exp(t);
        dp[0] = x * F(x, p[0]);
      };
      odeint::integrate_adaptive(stepper, rhs_t, psi, std::log(x0), std::log(x_mid), 1e-3);
    }
    if (x_mid < X) {
      auto rhs_x = [&](const State& p, State& dp, double x) { dp[0] = F(x, p[0]); };
      odeint::integrate_adaptive(stepper, rhs_x, psi, std::max(x0, x_mid), X, 1e-3);
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::IntegratorStep, std::string("Pruefer integration: ") + e.what());
  }
  if (!std::isfinite(psi[0])) fail(ErrorKind::IntegratorStep, "Pruefer angle not finite");
  return psi[0];
}

std::size_t prufer_count(const RadialOperatorSpec& spec, const TortoiseMap& map, double x0,
                         double X, bool wall_on_h2, double lam_lo, double lam_hi) {
  const double target = wall_on_h2 ? 0.0 : 0.5 * std::numbers::pi;
  const double pa = prufer_angle(spec, map, x0, X, lam_lo);
  const double pb = prufer_angle(spec, map, x0, X, lam_hi);
  // integers j with pb < target + j pi < pa
  const double ua = (pa - target) / std::numbers::pi, ub = (pb - target) / std::numbers::pi;
  const double n = std::ceil(ua) - std::floor(ub) - 1.0;
  return n > 0 ? std::size_t(n) : 0;
}

DecayReport eigenvector_decay(const Tridiag& T, const DiracGrid& g,
                              const std::vector<double>& vec, double lambda,
                              const SpacetimeProfile& profile) {
  DecayReport rep;
  const std::size_t n = T.size();
  if (vec.size() != n || n < 8) return rep;
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + T.first;
    h[i] = vec[i] / std::sqrt(g.y[j + 1] - g.y[j - 1]);
  }
  std::vector<double> amp(n - 1);
  double amax = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    amp[i] = std::hypot(h[i], h[i + 1]);
    amax = std::max(amax, amp[i]);
  }
  if (!(amax > 0.0)) return rep;
  std::size_t ja = 0, jb = 0;
  for (std::size_t i = amp.size(); i-- > 0;)
    if (amp[i] > 1e-9 * amax) {
      jb = i;
      break;
    }
  for (std::size_t i = amp.size(); i-- > 0;)
    if (amp[i] > 1e-3 * amax) {
      ja = i;
      break;
    }
  // keep clear of the wall, where the reflected branch e^{-2 kappa (X - x)} bends the slope
  const double kappa = std::sqrt(1.0 - lambda * lambda);
  const double x_stop = g.y[n + T.first] - 3.0 / kappa;
  while (jb > ja && g.y[jb + T.first + 1] > x_stop) --jb;
  if (jb <= ja + 16) return rep;
  // least squares of ln amp against x
  double sx = 0, sy = 0, sxx = 0, sxy = 0, pred = 0;
  const double nu = (profile.G() * profile.M() + lambda * profile.constants().e() * profile.Q()) / kappa;
  const double cnt = double(jb - ja + 1);
  for (std::size_t i = ja; i <= jb; ++i) {
    const double x = 0.5 * (g.y[i + T.first] + g.y[i + T.first + 1]);
    const double yv = std::log(amp[i]);
    sx += x;
    sy += yv;
    sxx += x * x;
    sxy += x * yv;
    pred += -kappa + nu / x;
  }
  rep.measured_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  rep.predicted_slope = pred / cnt;
  rep.x_lo = g.y[ja + T.first];
  rep.x_hi = g.y[jb + T.first];
  rep.determined = true;
  rep.ok = std::abs(rep.measured_slope - rep.predicted_slope) <= 0.05 * std::abs(rep.predicted_slope);
  return rep;
}

SpectrumResult gap_eigenvalues(const RadialOperatorSpec& spec, const TortoiseMap& map_in,
                               double lo, double hi, const SpectrumOptions& opt) {
  spec.validate();
  check_window(lo, hi, opt.edge_tol);
  if (opt.max_count == 0) fail(ErrorKind::InvalidArgument, "max_count must be positive");

  SpectrumResult res;
  res.k = spec.k;
  res.theta = spec.theta;
  const double X = opt.x_max ? *opt.x_max : outer_cutoff(hi);
  res.x_max = X;
  TortoiseMap map = map_in;
  if (X > map.x_max()) {
    TortoiseOptions to;
    to.x_max = X;
    to.n_nodes = opt.grid_nodes;
    map = TortoiseMap::build(map_in.profile(), to);
  }

  try {
    res.classification = classify_params(regime_params(map.profile()), spec.mu_a);
    res.theta_mute = res.classification->esa == EsaVerdict::EssentiallySelfAdjoint;
  } catch (const Error&) {
    // borderline laws have no closed-form verdict
  }

  GridOptions go;
  go.x0 = opt.x0;
  go.x_max = X;
  go.nodes = opt.grid_nodes;
  go.nodes_below = opt.nodes_below;
  go.x_split = opt.x_split;
  const DiracGrid coarse = make_grid(go);
  const DiracGrid fine = refine(coarse);
  const CoefficientFn coef = operator_coefficients(spec, map);

  const Tridiag Tc = assemble(tabulate_coefficients(coef, coarse), coarse, spec.theta);
  const Tridiag Tf = assemble(tabulate_coefficients(coef, fine), fine, spec.theta);

  // coarse values over a slightly wider window so edge eigenvalues find a partner
  const double pad = 0.05 * (hi - lo);
  const double clo = std::max(-1.0 + 1e-15, lo - pad), chi = std::min(1.0 - 1e-15, hi + pad);
  const auto wc = eigenvalues_in(Tc, clo, chi, opt.max_count + 8);
  const auto wf = eigenvalues_in(Tf, lo, hi, opt.max_count);
  res.in_window = wf.in_window;
  res.capped = wf.in_window > opt.max_count;

  std::vector<double> sens;
  if (opt.x0_sensitivity) {
    const DiracGrid shifted = truncate_inner(coarse, 10.0 * opt.x0);
    const Tridiag Ts = assemble(tabulate_coefficients(coef, shifted), shifted, spec.theta);
    sens = eigenvalues_in(Ts, clo, chi, opt.max_count + 8).values;
  }

  std::vector<GapEigenvalue> all;
  for (std::size_t i = 0; i < wf.values.size(); ++i) {
    GapEigenvalue ev;
    ev.k = spec.k;
    ev.theta = spec.theta;
    ev.index = i;
    ev.fine = wf.values[i];
    ev.coarse = nearest(wc.values, ev.fine);
    if (std::isnan(ev.coarse)) {
      ev.coarse = ev.fine;
      ev.richardson_error = INFINITY;
    } else {
      ev.richardson_error = std::abs(ev.fine - ev.coarse);
    }
    ev.value = ev.fine + (ev.fine - ev.coarse) / 3.0;
    ev.converged = ev.richardson_error <= opt.richardson_rel * std::abs(ev.fine) &&
                   ev.value > -1.0 && ev.value < 1.0;
    if (opt.x0_sensitivity) {
      const double s = nearest(sens, ev.coarse);
      ev.x0_sensitivity = std::isnan(s) ? INFINITY : std::abs(s - ev.coarse);
    }
    all.push_back(ev);
  }

  if (opt.prufer_check && !all.empty()) {
    const double x0f = fine.y.front();
    const double Xf = wall_position(fine, spec.theta);
    const bool on_h2 = outer_wall_on_h2(spec.theta);
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ii = 0; ii < std::ptrdiff_t(all.size()); ++ii) {
      const std::size_t i = std::size_t(ii);
      try {
        const double upper =
            i + 1 < wf.values.size() ? 0.5 * (wf.values[i] + wf.values[i + 1])
                                     : (wf.in_window > wf.values.size()
                                            ? 0.5 * (wf.values[i] + hi)
                                            : hi);
        // upper of the last value: hi only when no later eigenvalue is skipped
        const std::size_t cnt = prufer_count(spec, map, x0f, Xf, on_h2, lo, upper);
        all[i].prufer_ok = (cnt == i + 1);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  }

  if (opt.decay_check && !all.empty()) {
    const auto vecs = eigenvectors(Tf, wf.values);
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto rep = eigenvector_decay(Tf, fine, vecs[i], wf.values[i], map.profile());
      if (rep.determined) all[i].decay_ok = rep.ok;
    }
  }

  for (auto& ev : all) {
    if (ev.converged && ev.prufer_ok.value_or(true))
      res.eigenvalues.push_back(ev);
    else
      res.unconverged.push_back(ev);
  }
  res.count = res.eigenvalues.size();
  return res;
}

std::vector<WeylResidual> weyl_sequence_check(double lambda, const std::vector<int>& n_list,
                                              double h) {
  if (!(std::abs(lambda) > 1.0)) fail(ErrorKind::LambdaInGap, "Weyl sequence needs |lambda| > 1");
  if (!(h > 0.0)) fail(ErrorKind::InvalidArgument, "step must be positive");
  const double q = (lambda > 0 ? 1.0 : -1.0) * std::sqrt(lambda * lambda - 1.0);
  const double u1 = std::sqrt(1.0 + 1.0 / lambda), u2 = std::sqrt(1.0 - 1.0 / lambda);
  std::vector<WeylResidual> out;
  for (int n : n_list) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "sequence index must be >= 1");
    // envelope e^{-x/2n} is below 1e-17 at 80 n
    const DiracGrid g = uniform_grid(0.0, 80.0 * n, h);
    const Tridiag T = assemble(tabulate_coefficients_serial(free_coefficients(), g), g, 0.0);
    const std::size_t m = T.size();
    std::vector<double> re(m), im(m), tr, ti;
    const double pref = 1.0 / (2.0 * std::pow(double(n), 1.5));
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + T.first;
      const double x = g.y[j];
      const double env = pref * x * std::exp(-x / (2.0 * n));
      const double sw = std::sqrt(g.y[j + 1] - g.y[j - 1]);
      // f1 = u1 e^{iqx} on odd nodes, f2 = i u2 e^{iqx} on even nodes
      const double cr = std::cos(q * x), ci = std::sin(q * x);
      if (j % 2 == 1) {
        re[i] = sw * env * u1 * cr;
        im[i] = sw * env * u1 * ci;
      } else {
        re[i] = -sw * env * u2 * ci;
        im[i] = sw * env * u2 * cr;
      }
    }
    apply(T, re, tr);
    apply(T, im, ti);
    double r2 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = tr[i] - lambda * re[i], b = ti[i] - lambda * im[i];
      r2 += a * a + b * b;
      n2 += re[i] * re[i] + im[i] * im[i];
    }
    out.push_back({n, std::sqrt(r2), std::sqrt(n2)});
  }
  return out;
}

}  // namespace gravdirac
