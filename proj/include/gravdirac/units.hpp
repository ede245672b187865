#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gravdirac {

// Dimensionless constants. Internally hbar = c = m_e = 1, so lengths are in
// reduced Compton wavelengths, energies in m_e c^2 and e^2 = alpha_s.
struct PhysicalConstants {
  double alpha_s = 1.0 / 137.035999084;
  double epsilon = 1.0 / 1836.15267343;  // m_e / m_p
  double gamma_pe = 4.4068e-40;          // G m_p m_e / e^2

  double G() const { return gamma_pe * alpha_s * epsilon; }
  double e() const;
  double proton_mass() const { return 1.0 / epsilon; }
  // e^3 / (4 pi m_e c^2) expressed in internal units
  double classical_moment() const;
  void validate() const;
};

struct NucleusParams {
  double Z = 1.0;
  std::optional<int> N;
  std::optional<double> M_adm;  // electron-mass units
  std::optional<double> A_override;

  // Z + N when N is given, else round(2.5 Z)
  double A() const;
  double mass(const PhysicalConstants& c) const;
  double charge(const PhysicalConstants& c) const { return Z * c.e(); }
  std::vector<std::string> warnings() const;
  void validate() const;
};

}  // namespace gravdirac
