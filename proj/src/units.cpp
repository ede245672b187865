#include "gravdirac/units.hpp"

#include <cmath>

#include "gravdirac/errors.hpp"

namespace gravdirac {

double PhysicalConstants::e() const { return std::sqrt(alpha_s); }

double PhysicalConstants::classical_moment() const {
  return std::pow(alpha_s, 1.5) / (4.0 * M_PI);
}

void PhysicalConstants::validate() const {
  if (!(alpha_s > 0.0) || !(epsilon >= 0.0) || !(gamma_pe >= 0.0))
    fail(ErrorKind::InvalidArgument, "constants must be positive");
}

double NucleusParams::A() const {
  if (A_override) return *A_override;
  if (N) return Z + *N;
  return std::round(2.5 * Z);
}

double NucleusParams::mass(const PhysicalConstants& c) const {
  if (M_adm) return *M_adm;
  if (!(c.epsilon > 0.0)) fail(ErrorKind::InvalidArgument, "epsilon must be positive to derive M_adm");
  return A() / c.epsilon;
}

std::vector<std::string> NucleusParams::warnings() const {
  std::vector<std::string> out;
  if (N && (Z > A() || A() > 3.0 * Z)) out.push_back("A(Z,N) outside [Z, 3Z]");
  return out;
}

void NucleusParams::validate() const {
  if (!(Z > 0.0)) fail(ErrorKind::InvalidArgument, "Z must be positive");
  if (N && *N < 0) fail(ErrorKind::InvalidArgument, "N must be non-negative");
  if (M_adm && !(*M_adm > 0.0)) fail(ErrorKind::InvalidArgument, "M_adm must be positive");
}

}  // namespace gravdirac
