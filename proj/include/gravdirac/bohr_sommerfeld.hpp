#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gravdirac/spacetime.hpp"

namespace gravdirac {

enum class BSModel { BohrNR, SR, GR_RWN, GR_NonlinearVacuum };

const char* to_string(BSModel m);
BSModel parse_bs_model(const std::string& s);

// Circular-orbit energy functions in units rho = r m_e c / hbar, V = U / m_e c^2.
struct BSProblem {
  BSModel model = BSModel::SR;
  NucleusParams nucleus;
  PhysicalConstants consts;
  int n = 1;
  std::optional<SpacetimeProfile> profile;  // GR_NonlinearVacuum only

  void validate() const;
};

double energy_function(const BSProblem& prob, double rho);

struct BSMinimum {
  bool unbounded = false;
  double rho_star = 0.0;
  double E_star = 0.0;
  double rho_inner = 0.0;  // innermost radius examined
};

BSMinimum minimize(const BSProblem& prob);

// -(1/2) alpha^2 (Z + gamma A)^2 / (1 + eps / A) / n^2; eps -> 0 when
// born_oppenheimer is set
double bohr_energy(const NucleusParams& nucleus, const PhysicalConstants& consts, int n,
                   bool born_oppenheimer = false);
std::vector<double> bohr_spectrum(const NucleusParams& nucleus, const PhysicalConstants& consts,
                                  int n_max, bool born_oppenheimer = false);

using Extended = boost::multiprecision::cpp_bin_float_50;

std::vector<Extended> bohr_spectrum_extended(const NucleusParams& nucleus,
                                             const PhysicalConstants& consts, int n_max,
                                             bool born_oppenheimer = false);
// |E_n(gamma_pe) - E_n(0)| / |E_n(0)|
Extended bohr_relative_shift(const NucleusParams& nucleus, const PhysicalConstants& consts, int n);

struct CatastropheResult {
  bool finite_threshold = false;
  std::optional<int> Z_star;
  std::vector<std::pair<double, bool>> samples;  // (Z, minimum found)
  std::optional<double> inner_exponent;          // overall 1/r^p singularity of the GR factor
  std::optional<double> beta;                    // potential exponent it must dominate
};

// SR: floor(n / alpha). GR models: sampled minimisation plus the inner exponent.
CatastropheResult catastrophe_threshold(BSModel model, int n, const PhysicalConstants& consts,
                                        const std::optional<SpacetimeProfile>& profile = {});

// m(r) = A r^kappa near 0 gives an r^{(min(kappa,1) - 3)/2} singularity; returns its magnitude
double zero_bare_mass_singularity_exponent(double kappa);

}  // namespace gravdirac
