#pragma once

#include <memory>
#include <vector>

#include "gravdirac/spacetime.hpp"

namespace gravdirac {

struct TortoiseOptions {
  double x_max = 200.0;
  std::size_t n_nodes = 200000;  // Dirac grid size recorded for the operator
  int per_decade = 200;          // r-table density
};

// Operator coefficients at one tortoise coordinate.
//   a = f, b = e phi, c = f / r, d = phi' f
struct Coefficients {
  double r, f2, a, b, c, d;
};

// x(r) = int_0^r ds / f^2(s), tabulated on a log r grid and inverted by
// cubic Hermite interpolation in (ln x, ln r). G = 0 gives r = x.
class TortoiseMap {
 public:
  static TortoiseMap build(const SpacetimeProfile& profile, const TortoiseOptions& opt = {});

  const SpacetimeProfile& profile() const;
  bool flat() const;
  double x_max() const;
  std::size_t n_nodes() const;

  double r_of_x(double x) const;
  double x_of_r(double r) const;
  Coefficients at(double x) const;

  // d ln r / d ln x over the innermost tabulated decade
  double inner_slope() const;
  // smallest x covered by the table (below it r follows the inner power law)
  double x_table_min() const;

  struct Data;

 private:
  explicit TortoiseMap(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

TortoiseMap build_tortoise(const SpacetimeProfile& profile, double x_max, std::size_t n_nodes);

}  // namespace gravdirac
