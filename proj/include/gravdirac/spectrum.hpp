#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gravdirac/eigensolver.hpp"
#include "gravdirac/radial_operator.hpp"
#include "gravdirac/regime.hpp"

namespace gravdirac {

struct SpectrumOptions {
  double x0 = 1e-10;
  std::size_t grid_nodes = 200000;
  std::size_t nodes_below = 10000;
  double x_split = 1e-3;
  std::optional<double> x_max;  // default: outer cutoff policy
  std::size_t max_count = 50;
  double richardson_rel = 1e-6;
  double edge_tol = 1e-4;
  bool prufer_check = true;
  bool x0_sensitivity = true;
  bool decay_check = false;
};

struct GapEigenvalue {
  int k = 0;
  double theta = 0.0;
  std::size_t index = 0;  // position inside the window on the fine grid
  double value = 0.0;     // Richardson-extrapolated
  double coarse = 0.0;
  double fine = 0.0;
  double richardson_error = 0.0;  // |fine - coarse|
  double x0_sensitivity = 0.0;    // |E(x0) - E(10 x0)| on the coarse grid
  bool converged = false;
  std::optional<bool> prufer_ok;
  std::optional<bool> decay_ok;
};

struct SpectrumResult {
  int k = 0;
  double theta = 0.0;
  std::vector<GapEigenvalue> eigenvalues;  // converged, ascending
  std::vector<GapEigenvalue> unconverged;
  std::pair<double, double> ess_spectrum_edges{-1.0, 1.0};
  std::size_t count = 0;         // converged ones
  std::size_t in_window = 0;     // fine-grid eigenvalues in the window
  bool capped = false;           // in_window > max_count
  bool theta_mute = false;       // classifier says ESA
  std::optional<RegimeClassification> classification;
  double x_max = 0.0;
};

// e^{-x sqrt(1 - hi^2)} < 1e-12, never below 200
double outer_cutoff(double hi);

// Window of (-1, 1) after the edge check; throws WindowAtEdge.
void check_window(double lo, double hi, double edge_tol);

SpectrumResult gap_eigenvalues(const RadialOperatorSpec& spec, const TortoiseMap& map, double lo,
                               double hi, const SpectrumOptions& opt = {});

// Number of eigenvalues of the continuous problem on [x0, X] inside
// (lam_lo, lam_hi), from the Pruefer angle of the rotated system.
std::size_t prufer_count(const RadialOperatorSpec& spec, const TortoiseMap& map, double x0,
                         double X, bool wall_on_h2, double lam_lo, double lam_hi);
// Pruefer angle at X
double prufer_angle(const RadialOperatorSpec& spec, const TortoiseMap& map, double x0, double X,
                    double lambda);

struct DecayReport {
  bool determined = false;
  double measured_slope = 0.0;
  double predicted_slope = 0.0;  // mean of -kappa + nu/x over the fit window
  double x_lo = 0.0, x_hi = 0.0;
  bool ok = false;  // within 5%
};

// Fits ln|h| against x where the amplitude falls from 1e-3 to 1e-9 of its
// maximum and compares with -sqrt(1-lambda^2) + nu/x.
DecayReport eigenvector_decay(const Tridiag& T, const DiracGrid& g,
                              const std::vector<double>& vec, double lambda,
                              const SpacetimeProfile& profile);

struct WeylResidual {
  int n = 0;
  double residual = 0.0;
  double norm = 0.0;
};

// Residuals ||(K0 - lambda) f_n|| of the free operator on a uniform chain.
std::vector<WeylResidual> weyl_sequence_check(double lambda, const std::vector<int>& n_list,
                                              double h = 0.01);

}  // namespace gravdirac
