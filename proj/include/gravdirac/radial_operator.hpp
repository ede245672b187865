#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gravdirac/tortoise.hpp"

namespace gravdirac {

struct RadialOperatorSpec {
  int k = -1;
  double theta = 0.0;  // boundary parameter in [0, pi)
  double mu_a = 0.0;   // internal units (e hbar / m_e c)
  std::optional<double> lambda_probe;

  void validate() const;
};

// Staggered chain y_0 < y_1 < ... < y_last. After the rotation by theta the
// inner condition becomes h2(y_0) = 0; h1 lives on odd and h2 on even indices.
struct DiracGrid {
  std::vector<double> y;
  double geometric_end = 0.0;  // refine() bisects geometrically up to here
};

struct GridOptions {
  double x0 = 1e-10;
  double x_max = 200.0;
  std::size_t nodes = 200000;
  std::size_t nodes_below = 10000;  // geometric nodes below x_split
  double x_split = 1e-3;
};

// Geometric from x0 with the same ratio until the step reaches the uniform
// spacing of the remaining nodes, uniform after that.
DiracGrid make_grid(const GridOptions& opt);
DiracGrid uniform_grid(double x0, double x_max, double h);
// every interval halved (geometric midpoint where the grid is geometric)
DiracGrid refine(const DiracGrid& g);
// drops nodes below x_new, keeping the inner node on an even index
DiracGrid truncate_inner(const DiracGrid& g, double x_new);

// Outer wall component: h2 for theta in [0, pi/2], h1 otherwise.
bool outer_wall_on_h2(double theta);

// Rotated potentials at one point.
struct LocalPotential {
  double b;    // -b on both diagonals
  double a11;  // a cos 2t - s sin 2t
  double a12;  // a sin 2t + s cos 2t
};

LocalPotential rotate(double a, double b, double s, double theta);

// Symmetric tridiagonal matrix (already scaled by the node weights).
struct Tridiag {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1
  std::size_t first = 1;    // grid index of unknown 0
  std::size_t size() const { return diag.size(); }
};

// coefficient callback: (a, b, s) at x, where s = k c - mu_a d
using CoefficientFn = std::function<void(double x, double& a, double& b, double& s)>;

CoefficientFn operator_coefficients(const RadialOperatorSpec& spec, const TortoiseMap& map);
CoefficientFn free_coefficients();

// Coefficients at grid nodes and cell midpoints: out[2j] at y_j, out[2j+1]
// at the midpoint of [y_j, y_{j+1}].
struct CoefficientTable {
  std::vector<double> a, b, s;
};
CoefficientTable tabulate_coefficients(const CoefficientFn& fn, const DiracGrid& g);
CoefficientTable tabulate_coefficients_serial(const CoefficientFn& fn, const DiracGrid& g);

Tridiag assemble(const CoefficientTable& t, const DiracGrid& g, double theta);
Tridiag assemble_operator(const RadialOperatorSpec& spec, const TortoiseMap& map,
                          const DiracGrid& g);

// y = T x
void apply(const Tridiag& T, const std::vector<double>& x, std::vector<double>& y);

}  // namespace gravdirac
