#include "gravdirac/radial_operator.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "gravdirac/errors.hpp"

namespace gravdirac {

void RadialOperatorSpec::validate() const {
  if (k == 0) fail(ErrorKind::InvalidArgument, "k must be nonzero");
  if (!(theta >= 0.0 && theta < std::numbers::pi))
    fail(ErrorKind::InvalidArgument, "theta must lie in [0, pi)");
  if (!std::isfinite(mu_a)) fail(ErrorKind::InvalidArgument, "mu_a must be finite");
}

DiracGrid make_grid(const GridOptions& opt) {
  if (!(opt.x0 > 0.0 && opt.x_split > opt.x0 && opt.x_max > opt.x_split))
    fail(ErrorKind::InvalidArgument, "grid needs 0 < x0 < x_split < x_max");
  if (opt.nodes < opt.nodes_below + 16 || opt.nodes_below < 2)
    fail(ErrorKind::InvalidArgument, "too few grid nodes");
  const double q = std::pow(opt.x_split / opt.x0, 1.0 / double(opt.nodes_below));
  const std::size_t last = opt.nodes - 1;

  // smallest switch index m where the geometric step exceeds the uniform one
  std::size_t m = opt.nodes_below;
  double ym = opt.x_split;
  for (;; ++m, ym *= q) {
    if (m + 2 >= last || ym >= opt.x_max) fail(ErrorKind::InvalidArgument, "grid too coarse for x_max");
    const double hu = (opt.x_max - ym) / double(last - m);
    if (ym * (q - 1.0) >= hu) break;
  }
  DiracGrid g;
  g.y.resize(opt.nodes);
  for (std::size_t i = 0; i <= m; ++i) g.y[i] = opt.x0 * std::pow(q, double(i));
  g.y[m] = ym;
  const double hu = (opt.x_max - ym) / double(last - m);
  for (std::size_t i = m + 1; i <= last; ++i) g.y[i] = ym + double(i - m) * hu;
  g.y[last] = opt.x_max;
  g.geometric_end = ym;
  return g;
}

DiracGrid uniform_grid(double x0, double x_max, double h) {
  if (!(h > 0.0 && x_max > x0)) fail(ErrorKind::InvalidArgument, "bad uniform grid");
  const auto n = std::size_t(std::ceil((x_max - x0) / h));
  DiracGrid g;
  g.y.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g.y[i] = x0 + double(i) * h;
  g.geometric_end = x0;
  return g;
}

DiracGrid refine(const DiracGrid& g) {
  DiracGrid r;
  r.geometric_end = g.geometric_end;
  r.y.reserve(2 * g.y.size());
  for (std::size_t i = 0; i + 1 < g.y.size(); ++i) {
    const double a = g.y[i], b = g.y[i + 1];
    r.y.push_back(a);
    r.y.push_back(b <= g.geometric_end && a > 0.0 ? std::sqrt(a * b) : 0.5 * (a + b));
  }
  r.y.push_back(g.y.back());
  return r;
}

DiracGrid truncate_inner(const DiracGrid& g, double x_new) {
  std::size_t i = 0;
  while (i + 2 < g.y.size() && g.y[i + 2] <= x_new) i += 2;
  DiracGrid r;
  r.geometric_end = g.geometric_end;
  r.y.assign(g.y.begin() + std::ptrdiff_t(i), g.y.end());
  return r;
}

bool outer_wall_on_h2(double theta) { return theta <= 0.5 * std::numbers::pi; }

LocalPotential rotate(double a, double b, double s, double theta) {
  const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
  return {b, a * c2 - s * s2, a * s2 + s * c2};
}

CoefficientFn operator_coefficients(const RadialOperatorSpec& spec, const TortoiseMap& map) {
  spec.validate();
  const double k = spec.k, mu = spec.mu_a;
  return [map, k, mu](double x, double& a, double& b, double& s) {
    const Coefficients c = map.at(x);
    a = c.a;
    b = c.b;
    s = k * c.c - mu * c.d;
  };
}

CoefficientFn free_coefficients() {
  return [](double, double& a, double& b, double& s) {
    a = 1.0;
    b = 0.0;
    s = 0.0;
  };
}

namespace {

double eval_point(const DiracGrid& g, std::size_t i) {
  const std::size_t j = i / 2;
  return (i % 2 == 0) ? g.y[j] : 0.5 * (g.y[j] + g.y[j + 1]);
}

}  // namespace

CoefficientTable tabulate_coefficients(const CoefficientFn& fn, const DiracGrid& g) {
  const std::size_t n = 2 * g.y.size() - 1;
  CoefficientTable t;
  t.a.resize(n);
  t.b.resize(n);
  t.s.resize(n);
  std::exception_ptr err;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) {
    try {
      fn(eval_point(g, std::size_t(i)), t.a[i], t.b[i], t.s[i]);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return t;
}

CoefficientTable tabulate_coefficients_serial(const CoefficientFn& fn, const DiracGrid& g) {
  const std::size_t n = 2 * g.y.size() - 1;
  CoefficientTable t;
  t.a.resize(n);
  t.b.resize(n);
  t.s.resize(n);
  for (std::size_t i = 0; i < n; ++i) fn(eval_point(g, i), t.a[i], t.b[i], t.s[i]);
  return t;
}

Tridiag assemble(const CoefficientTable& t, const DiracGrid& g, double theta) {
  const auto& y = g.y;
  if (y.size() < 4) fail(ErrorKind::InvalidArgument, "grid too small");
  std::size_t wall = y.size() - 1;
  const bool want_even = outer_wall_on_h2(theta);
  if ((wall % 2 == 0) != want_even) --wall;
  const std::size_t n = wall - 1;  // unknowns 1 .. wall-1

  const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
  auto A11 = [&](std::size_t i) { return t.a[i] * c2 - t.s[i] * s2; };
  auto A12 = [&](std::size_t i) { return t.a[i] * s2 + t.s[i] * c2; };
  auto w = [&](std::size_t j) { return y[j + 1] - y[j - 1]; };

  Tridiag T;
  T.first = 1;
  T.diag.resize(n);
  T.off.resize(n > 0 ? n - 1 : 0);
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = 2 * j;
    const bool h1 = (j % 2 == 1);
    T.diag[j - 1] = -t.b[i] + (h1 ? A11(i) : -A11(i));
  }
  for (std::size_t j = 1; j < n; ++j) {
    const double ell = y[j + 1] - y[j];
    const double mid = A12(2 * j + 1);
    const double scale = std::sqrt(w(j) * w(j + 1));
    // row j couples forward, row j+1 backward; both must give the same number
    const double sig_up = (j % 2 == 1) ? -1.0 : 1.0;
    const double upper = (sig_up + ell * mid) / scale;
    const double sig_lo = ((j + 1) % 2 == 0) ? -1.0 : 1.0;
    const double lower = (sig_lo + ell * mid) / scale;
    if (!(upper == lower))
      fail(ErrorKind::NonSymmetricAssembly, "transposed entries differ at node " + std::to_string(j));
    T.off[j - 1] = upper;
  }
  for (double v : T.diag)
    if (!std::isfinite(v)) fail(ErrorKind::NonSymmetricAssembly, "non-finite diagonal entry");
  for (double v : T.off)
    if (!std::isfinite(v)) fail(ErrorKind::NonSymmetricAssembly, "non-finite off-diagonal entry");
  return T;
}

Tridiag assemble_operator(const RadialOperatorSpec& spec, const TortoiseMap& map,
                          const DiracGrid& g) {
  return assemble(tabulate_coefficients(operator_coefficients(spec, map), g), g, spec.theta);
}

void apply(const Tridiag& T, const std::vector<double>& x, std::vector<double>& y) {
  const std::size_t n = T.size();
  y.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double v = T.diag[i] * x[i];
    if (i > 0) v += T.off[i - 1] * x[i - 1];
    if (i + 1 < n) v += T.off[i] * x[i + 1];
    y[i] = v;
  }
}

}  // namespace gravdirac
