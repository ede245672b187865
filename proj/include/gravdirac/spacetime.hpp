#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "gravdirac/quadrature.hpp"
#include "gravdirac/units.hpp"
#include "gravdirac/vacuum_law.hpp"

namespace gravdirac {

// Flat-space field integrals of a vacuum law around a point charge Q:
//   E(r)   = int_r^inf zeta(Q^2/2s^4) s^2 ds
//   phi(r) = Q int_r^inf zeta'(Q^2/2s^4) s^-2 ds
// evaluated as integrals over u = 1/s on (0, 1/r].
class FieldIntegrals {
 public:
  FieldIntegrals(VacuumLaw law, double Q, QuadTol tol = {});

  double energy(double r) const;
  double potential(double r) const;
  // derivatives in closed form
  double denergy(double r) const;
  double dpotential(double r) const;

  // values at r = 0; +inf when the integral diverges
  double energy_at_zero() const { return E0_; }
  double potential_at_zero() const { return P0_; }
  bool finite_energy() const { return std::isfinite(E0_); }

  // int_0^r zeta s^2 ds and Q int_0^r zeta' s^-2 ds (finite-energy laws only)
  double energy_inside(double r) const;
  double potential_drop_inside(double r) const;

  const VacuumLaw& law() const { return law_; }
  double Q() const { return Q_; }
  // large-mu exponent b of the law; energy is finite at 0 iff b < 3/4
  double tail_exponent() const { return b_; }
  bool borderline() const { return std::abs(b_ - 0.75) < 1e-3; }

 private:
  double mu_of(double s) const { return Q_ * Q_ / (2.0 * s * s * s * s); }
  double u_integral(bool potential, double U) const;
  double s_integral(bool potential, double r) const;

  VacuumLaw law_;
  double Q_;
  QuadTol tol_;
  std::vector<double> u_breaks_;
  double b_ = 1.0;
  double E0_ = 0.0, P0_ = 0.0;
};

// Energy and potential tabulated on a log grid with exact node derivatives;
// cubic Hermite in ln r between nodes. Positive columns are stored as ln y
// (power laws are then interpolated exactly).
struct FieldMemo {
  double ln_lo = 0.0, ln_step = 0.0;
  std::vector<double> E, dE, P, dP;  // dE, dP are d/d(ln r) of the stored value
  bool log_E = false, log_P = false;

  bool covers(double r) const;
  double energy(double r) const;
  double potential(double r) const;
};

FieldMemo tabulate_fields(const FieldIntegrals& fi, std::size_t nodes, double r_lo, double r_hi);
// single-threaded reference for tabulate_fields
FieldMemo tabulate_fields_serial(const FieldIntegrals& fi, std::size_t nodes, double r_lo,
                                 double r_hi);

enum class HorizonKind { None, Horizons, SingleRoot };

struct HorizonStatus {
  HorizonKind kind = HorizonKind::None;
  double r_minus = 0.0;
  double r_plus = 0.0;  // the single root for SingleRoot
};

const char* to_string(HorizonKind kind);

// Closed-form roots of 1 - 2GM/r + GQ^2/r^2. Q = 0 gives r_minus = 0,
// r_plus = 2GM.
HorizonStatus detect_horizon_rwn(double M, double Q, double G);

struct SingularityData {
  double alpha = 0.0;  // m(r) ~ -C0 r^-alpha
  double beta = 0.0;   // phi(r) ~ C''_beta + C'_beta r^-beta
  double C0 = 0.0;
  double Cbeta_prime = 0.0;
  double Cbeta_dblprime = 0.0;
  double bare_mass = 0.0;  // -inf when the field energy diverges at 0
  double tail_exponent = 1.0;
};

struct ProfileOptions {
  std::size_t memo_nodes = 2000;
  double memo_lo = 1e-8;
  double memo_hi = 1e8;
  bool parallel = true;
  QuadTol tol{};
};

class SpacetimeProfile {
 public:
  static SpacetimeProfile build(const VacuumLaw& law, const NucleusParams& nucleus,
                                const PhysicalConstants& consts, const ProfileOptions& opt = {});

  const VacuumLaw& law() const;
  const NucleusParams& nucleus() const;
  const PhysicalConstants& constants() const;
  const FieldIntegrals& fields() const;
  bool is_maxwell() const;

  double M() const;
  double Q() const;
  double G() const;

  double mass(double r) const;
  double dmass(double r) const;
  double phi(double r) const;
  double dphi(double r) const;
  double energy(double r) const;
  double f2(double r) const;
  // memo bypassed
  double energy_direct(double r) const;
  double phi_direct(double r) const;

  double bare_mass() const;
  bool borderline() const;
  // throws BorderlineLaw for laws with tail exponent at 3/4
  const SingularityData& singularity() const;
  const HorizonStatus& horizon() const;

  // radius where m changes sign, if any
  std::optional<double> mass_zero() const;
  // radius where 2G|m|/r = 1 inside mass_zero (f^2 ~ 2G|m|/r below it)
  std::optional<double> core_radius() const;

  struct Data;

 private:
  explicit SpacetimeProfile(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

SingularityData extract_singularity_data(const SpacetimeProfile& profile);
HorizonStatus detect_horizon(const SpacetimeProfile& profile);

// (1/6) B(1/4, 1/4)
double hoffmann_energy_coefficient();
// smallest Born field strength for which m(0) <= 0
double hoffmann_field_bound(const NucleusParams& nucleus, const PhysicalConstants& consts);
bool hoffmann_no_bh_condition(const NucleusParams& nucleus, const PhysicalConstants& consts,
                              double b_born);
// no-horizon criterion when the bare mass vanishes
bool hoffmann_zero_bare_mass_condition(const NucleusParams& nucleus,
                                       const PhysicalConstants& consts);

}  // namespace gravdirac
