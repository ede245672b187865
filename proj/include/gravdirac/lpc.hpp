#pragma once

#include <vector>

#include "gravdirac/radial_operator.hpp"

namespace gravdirac {

enum class LpcVerdict { LimitPoint, LimitCircle };
const char* to_string(LpcVerdict v);

struct LpcOptions {
  int decades = 16;            // depth of the inward integration in x
  int steps_per_decade = 800;  // RK4 steps in ln x
  double slope_margin = 0.02;  // log10 units per decade
  double r_start_factor = 1e-2;  // start at this fraction of the core radius
};

struct LpcSolution {
  std::vector<double> decade_log10_norm;  // log10 int |g|^2 dx over each decade, inward
  double slope = 0.0;                     // per decade over the last three, inward
  bool square_integrable = false;
};

struct LpcResult {
  LpcVerdict verdict = LpcVerdict::LimitPoint;
  double lambda = 0.0;
  double x_start = 0.0;
  LpcSolution first, second;
};

// Integrates K g = lambda g inward from inside the core along two independent
// initial conditions; int f^-2 |g|^2 dr = int |g|^2 dx is summed per decade.
LpcResult lpc_probe(const RadialOperatorSpec& spec, const TortoiseMap& map,
                    const LpcOptions& opt = {});

}  // namespace gravdirac
