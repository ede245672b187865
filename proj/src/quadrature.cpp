#include "gravdirac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gravdirac/errors.hpp"

namespace gravdirac {

namespace {

// ask for more than we need; only the contract tolerance is enforced
constexpr double kRequest = 1e-13;

void check(double value, double err, double a, double b, const QuadTol& tol) {
  if (!std::isfinite(value) || err > std::max(tol.abs, tol.rel * std::abs(value))) {
    std::ostringstream os;
    os << "integral over [" << a << ", " << b << "] = " << value << " with error " << err;
    fail(ErrorKind::QuadratureNonConvergent, os.str());
  }
}

}  // namespace

double integrate(const Integrand& f, double a, double b, const QuadTol& tol) {
  if (a == b) return 0.0;
  // globally adaptive bisection over the Kronrod tables; boost's own driver
  // reports inflated error estimates on very short intervals
  struct Piece {
    double a, b, v, e;
    bool operator<(const Piece& o) const { return e < o.e; }
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  using GL = boost::math::quadrature::gauss<double, 15>;
  static const auto& xk = GK::abscissa();
  static const auto& wk = GK::weights();
  static const auto& wg = GL::weights();
  // Gauss nodes sit at the even Kronrod indices
  auto rule = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    const double f0 = f(c);
    double k = wk[0] * f0, g = wg[0] * f0;
    for (std::size_t i = 1; i < xk.size(); ++i) {
      const double pair = f(c - h * xk[i]) + f(c + h * xk[i]);
      k += wk[i] * pair;
      if (i % 2 == 0) g += wg[i / 2] * pair;
    }
    return Piece{lo, hi, k * h, std::abs((k - g) * h)};
  };
  std::priority_queue<Piece> heap;
  Piece first = rule(a, b);
  double total = first.v, total_err = first.e;
  heap.push(first);
  for (int it = 0; it < 2000; ++it) {
    if (total_err <= 1e-3 * std::max(tol.abs, tol.rel * std::abs(total))) break;
    Piece w = heap.top();
    heap.pop();
    const double mid = 0.5 * (w.a + w.b);
    if (!(mid > w.a && mid < w.b)) {
      heap.push(w);
      break;
    }
    Piece l = rule(w.a, mid), r = rule(mid, w.b);
    total += l.v + r.v - w.v;
    total_err += l.e + r.e - w.e;
    heap.push(l);
    heap.push(r);
  }
  // recompute from the pieces to drop accumulated cancellation
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().v;
    total_err += heap.top().e;
    heap.pop();
  }
  check(total, total_err, a, b, tol);
  return total;
}

double integrate_pieces(const Integrand& f, const std::vector<double>& points, const QuadTol& tol) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double v = integrate(f, points[i], points[i + 1], {tol.abs, tol.rel});
    sum += v;
  }
  return sum;
}

double integrate_endpoint(const Integrand& f, double a, double b, const QuadTol& tol) {
  if (a == b) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> ts(12);
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  auto g = [&](double x) {
    const double y = f(x);
    return std::isfinite(y) ? y : 0.0;
  };
  const double v = ts.integrate(g, a, b, kRequest, &err, &l1, &levels);
  check(v, err, a, b, tol);
  return v;
}

double integrate_to_infinity(const Integrand& f, double a, const QuadTol& tol) {
  static thread_local boost::math::quadrature::exp_sinh<double> es(12);
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  const double v =
      es.integrate(f, a, std::numeric_limits<double>::infinity(), kRequest, &err, &l1, &levels);
  check(v, err, a, std::numeric_limits<double>::infinity(), tol);
  return v;
}

std::vector<double> geometric_pieces(double a, double b, double ratio,
                                     const std::vector<double>& interior) {
  std::vector<double> pts{a};
  for (double p : interior)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double lo = out.back(), hi = pts[i];
    if (lo > 0.0 && hi / lo > ratio) {
      const int n = static_cast<int>(std::ceil(std::log(hi / lo) / std::log(ratio)));
      for (int j = 1; j < n; ++j) out.push_back(lo * std::pow(hi / lo, double(j) / n));
    }
    out.push_back(hi);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace gravdirac
