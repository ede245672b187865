#pragma once

#include <functional>
#include <vector>

namespace gravdirac {

struct QuadTol {
  double abs = 1e-12;
  double rel = 1e-10;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod on [a, b]. Throws QuadratureNonConvergent when the
// error estimate exceeds max(abs, rel*|I|).
double integrate(const Integrand& f, double a, double b, const QuadTol& tol = {});

// Sum of integrate() over consecutive pieces of `points`.
double integrate_pieces(const Integrand& f, const std::vector<double>& points,
                        const QuadTol& tol = {});

// tanh-sinh, for integrable endpoint singularities on [a, b]
double integrate_endpoint(const Integrand& f, double a, double b, const QuadTol& tol = {});

// exp-sinh on [a, inf)
double integrate_to_infinity(const Integrand& f, double a, const QuadTol& tol = {});

// Breakpoints a = p0 < ... < pn = b: geometric pieces of ratio <= `ratio`
// with the supplied interior points inserted. Requires a > 0.
std::vector<double> geometric_pieces(double a, double b, double ratio,
                                     const std::vector<double>& interior = {});

}  // namespace gravdirac
