#include "gravdirac/bohr_sommerfeld.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "gravdirac/errors.hpp"

namespace gravdirac {

const char* to_string(BSModel m) {
  switch (m) {
    case BSModel::BohrNR: return "BohrNR";
    case BSModel::SR: return "SR";
    case BSModel::GR_RWN: return "GR_RWN";
    case BSModel::GR_NonlinearVacuum: return "GR_NonlinearVacuum";
  }
  return "?";
}

BSModel parse_bs_model(const std::string& s) {
  if (s == "BohrNR" || s == "bohr") return BSModel::BohrNR;
  if (s == "SR" || s == "sr") return BSModel::SR;
  if (s == "GR_RWN" || s == "gr-rwn" || s == "gr_rwn") return BSModel::GR_RWN;
  if (s == "GR_NonlinearVacuum" || s == "gr-nonlinear" || s == "gr_nonlinear")
    return BSModel::GR_NonlinearVacuum;
  fail(ErrorKind::ParseError, "unknown model '" + s + "'");
}

void BSProblem::validate() const {
  if (n < 1) fail(ErrorKind::InvalidArgument, "n must be >= 1");
  nucleus.validate();
  consts.validate();
  if (model == BSModel::GR_NonlinearVacuum && !profile)
    fail(ErrorKind::InvalidArgument, "nonlinear-vacuum model needs a spacetime profile");
}

double energy_function(const BSProblem& prob, double rho) {
  if (!(rho > 0.0)) fail(ErrorKind::InvalidArgument, "rho must be positive");
  const double n = prob.n, a = prob.consts.alpha_s, Z = prob.nucleus.Z;
  const double root_sr = std::sqrt(rho * rho + n * n);  // rho * sqrt(1 + n^2/rho^2)
  switch (prob.model) {
    case BSModel::BohrNR:
      return 0.5 * n * n / (rho * rho) - Z * a / rho;
    case BSModel::SR:
      return (root_sr - Z * a) / rho;
    case BSModel::GR_RWN: {
      const double g = prob.consts.gamma_pe, eps = prob.consts.epsilon;
      const double A = prob.nucleus.mass(prob.consts) * eps;
      // rho^2 (1 - a g [2A - eps a Z^2 / rho] / rho)
      const double rad = rho * rho - a * g * (2.0 * A * rho - eps * a * Z * Z);
      if (rad < 0.0) fail(ErrorKind::NegativeRadicand, "gravitational radicand negative");
      return (root_sr * std::sqrt(rad) - Z * a * rho) / (rho * rho);
    }
    case BSModel::GR_NonlinearVacuum: {
      const auto& p = *prob.profile;
      const double f2 = p.f2(rho);
      if (f2 < 0.0) fail(ErrorKind::NegativeRadicand, "f^2 negative (horizon region)");
      return root_sr / rho * std::sqrt(f2) - p.constants().e() * p.phi(rho);
    }
  }
  return 0.0;
}

namespace {

struct Scan {
  std::vector<double> lr, v;
  std::size_t argmin = 0;
};

Scan scan(const BSProblem& prob, double lo, double hi, int per_decade) {
  Scan s;
  const double l0 = std::log(lo), l1 = std::log(hi);
  const int m = std::max(8, int(per_decade * (l1 - l0) / std::log(10.0)));
  for (int i = 0; i <= m; ++i) {
    const double l = l0 + (l1 - l0) * i / m;
    s.lr.push_back(l);
    s.v.push_back(energy_function(prob, std::exp(l)));
  }
  s.argmin = std::size_t(std::min_element(s.v.begin(), s.v.end()) - s.v.begin());
  return s;
}

}  // namespace

BSMinimum minimize(const BSProblem& prob) {
  prob.validate();
  const double a = prob.consts.alpha_s, n = prob.n, Z = prob.nucleus.Z;
  double lo = 1e-6 * n * a;
  double hi = 1e4 * n * n / (std::max(Z, 1e-300) * a);
  constexpr double kFloor = 1e-150;  // rho^2 stays representable
  BSMinimum out;
  for (int expand = 0; expand < 64; ++expand) {
    const Scan s = scan(prob, lo, hi, 20);
    out.rho_inner = lo;
    if (s.argmin == 0) {
      if (lo <= kFloor) {
        // infimum still at the inner edge after all shrinking
        if (s.v[0] < -1e3 && s.v[0] < s.v[1]) {
          out.unbounded = true;
          out.rho_star = lo;
          out.E_star = -INFINITY;
          return out;
        }
        fail(ErrorKind::BracketingFailure, "minimum not bracketed toward rho = 0");
      }
      hi = std::exp(s.lr[1]);
      lo = std::max(kFloor, lo * 1e-6);
      continue;
    }
    if (s.argmin == s.lr.size() - 1) {
      lo = std::exp(s.lr[s.lr.size() - 2]);
      hi *= 1e3;
      if (hi > 1e300) fail(ErrorKind::BracketingFailure, "minimum not bracketed toward infinity");
      continue;
    }
    auto f = [&](double l) { return energy_function(prob, std::exp(l)); };
    const auto r = boost::math::tools::brent_find_minima(f, s.lr[s.argmin - 1], s.lr[s.argmin + 1],
                                                         std::numeric_limits<double>::digits);
    out.rho_star = std::exp(r.first);
    out.E_star = r.second;
    return out;
  }
  fail(ErrorKind::BracketingFailure, "bracket expansion limit reached");
}

double bohr_energy(const NucleusParams& nucleus, const PhysicalConstants& c, int n,
                   bool born_oppenheimer) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "n must be >= 1");
  const double A = nucleus.A();
  const double eps = born_oppenheimer ? 0.0 : c.epsilon;
  const double zg = nucleus.Z + c.gamma_pe * A;
  return -0.5 * c.alpha_s * c.alpha_s * zg * zg / (1.0 + eps / A) / (double(n) * n);
}

std::vector<double> bohr_spectrum(const NucleusParams& nucleus, const PhysicalConstants& c,
                                  int n_max, bool born_oppenheimer) {
  if (n_max < 1) fail(ErrorKind::InvalidArgument, "n_max must be >= 1");
  std::vector<double> out;
  for (int n = 1; n <= n_max; ++n) out.push_back(bohr_energy(nucleus, c, n, born_oppenheimer));
  return out;
}

namespace {

Extended bohr_energy_ext(const NucleusParams& nucleus, const PhysicalConstants& c, int n,
                         bool born_oppenheimer, double gamma_pe) {
  const Extended A = nucleus.A();
  const Extended eps = born_oppenheimer ? 0.0 : c.epsilon;
  const Extended a = c.alpha_s;
  const Extended zg = Extended(nucleus.Z) + Extended(gamma_pe) * A;
  return -a * a * zg * zg / (2 * (1 + eps / A) * Extended(n) * Extended(n));
}

}  // namespace

std::vector<Extended> bohr_spectrum_extended(const NucleusParams& nucleus,
                                             const PhysicalConstants& c, int n_max,
                                             bool born_oppenheimer) {
  if (n_max < 1) fail(ErrorKind::InvalidArgument, "n_max must be >= 1");
  std::vector<Extended> out;
  for (int n = 1; n <= n_max; ++n)
    out.push_back(bohr_energy_ext(nucleus, c, n, born_oppenheimer, c.gamma_pe));
  return out;
}

Extended bohr_relative_shift(const NucleusParams& nucleus, const PhysicalConstants& c, int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "n must be >= 1");
  const Extended e1 = bohr_energy_ext(nucleus, c, n, false, c.gamma_pe);
  const Extended e0 = bohr_energy_ext(nucleus, c, n, false, 0.0);
  return abs(e1 - e0) / abs(e0);
}

double zero_bare_mass_singularity_exponent(double kappa) {
  if (!(kappa > 0.0)) fail(ErrorKind::InvalidArgument, "kappa must be positive");
  return (3.0 - std::min(kappa, 1.0)) / 2.0;
}

CatastropheResult catastrophe_threshold(BSModel model, int n, const PhysicalConstants& consts,
                                        const std::optional<SpacetimeProfile>& profile) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "n must be >= 1");
  CatastropheResult out;
  switch (model) {
    case BSModel::BohrNR:
      return out;  // bounded for every Z
    case BSModel::SR:
      out.finite_threshold = true;
      out.Z_star = int(std::floor(n / consts.alpha_s));
      return out;
    case BSModel::GR_RWN:
      for (double Z : {1.0, 137.0, 138.0, 200.0, 500.0}) {
        BSProblem p;
        p.model = model;
        p.consts = consts;
        p.nucleus.Z = Z;
        p.n = n;
        out.samples.push_back({Z, !minimize(p).unbounded});
      }
      out.inner_exponent = 2.0;  // the GR factor adds a full 1/r
      out.beta = 1.0;
      return out;
    case BSModel::GR_NonlinearVacuum: {
      if (!profile) fail(ErrorKind::InvalidArgument, "nonlinear-vacuum model needs a profile");
      const auto& sd = profile->singularity();
      const double bare = profile->bare_mass();
      // f ~ r^-kappa: finite negative bare mass gives 1/2, divergent m ~ r^-alpha gives (1+alpha)/2
      double kappa = 0.5;
      if (std::isinf(bare)) kappa = 0.5 * (1.0 + sd.alpha);
      if (bare == 0.0) kappa = 0.0;
      out.inner_exponent = 1.0 + kappa;
      out.beta = sd.beta;
      for (double Z : {1.0, 137.0, 138.0, 200.0, 500.0}) {
        NucleusParams nuc = profile->nucleus();
        nuc.Z = Z;
        nuc.N.reset();
        if (nuc.M_adm) nuc.M_adm = *nuc.M_adm * Z / profile->nucleus().Z;
        BSProblem p;
        p.model = model;
        p.consts = consts;
        p.nucleus = nuc;
        p.n = n;
        try {
          p.profile = SpacetimeProfile::build(profile->law(), nuc, consts);
          if (p.profile->horizon().kind != HorizonKind::None) continue;
          out.samples.push_back({Z, !minimize(p).unbounded});
        } catch (const Error&) {
          out.samples.push_back({Z, false});
        }
      }
      return out;
    }
  }
  return out;
}

}  // namespace gravdirac
