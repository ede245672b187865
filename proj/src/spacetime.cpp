#include "gravdirac/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "gravdirac/errors.hpp"

namespace gravdirac {

namespace {

// below this radius finite-energy laws integrate outward from r = 0
constexpr double kInnerSplit = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

FieldIntegrals::FieldIntegrals(VacuumLaw law, double Q, QuadTol tol)
    : law_(std::move(law)), Q_(std::abs(Q)), tol_(tol) {
  if (!(Q_ > 0.0)) fail(ErrorKind::InvalidArgument, "charge must be nonzero");
  try {
    b_ = extract_exponents(law_).b;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SlopeUnstable) fail(ErrorKind::ExponentFitUnstable, e.what());
    throw;
  }
  std::vector<double> mus = law_.breakpoints();
  mus.push_back(1.0);
  for (double m : mus) u_breaks_.push_back(std::pow(2.0 * m / (Q_ * Q_), 0.25));
  std::sort(u_breaks_.begin(), u_breaks_.end());
  u_breaks_.erase(std::unique(u_breaks_.begin(), u_breaks_.end()), u_breaks_.end());

  if (b_ < 0.75 - 1e-3) {
    E0_ = u_integral(false, 1.0 / kInnerSplit) + s_integral(false, kInnerSplit);
    P0_ = u_integral(true, 1.0 / kInnerSplit) + s_integral(true, kInnerSplit);
  } else {
    E0_ = kInf;
    P0_ = kInf;
  }
}

double FieldIntegrals::u_integral(bool potential, double U) const {
  const double q2 = Q_ * Q_;
  auto f = [&](double u) {
    const double mu = 0.5 * q2 * u * u * u * u;
    if (potential) return Q_ * law_.dzeta(mu);
    if (mu == 0.0) return 0.5 * q2;
    return law_.zeta(mu) / mu * 0.5 * q2;
  };
  std::vector<double> pts{0.0};
  const double first = std::min(u_breaks_.front(), U);
  auto rest = geometric_pieces(first, U, 10.0, u_breaks_);
  pts.insert(pts.end(), rest.begin(), rest.end());
  return integrate_pieces(f, pts, tol_);
}

double FieldIntegrals::s_integral(bool potential, double r) const {
  auto f = [&](double s) {
    const double mu = mu_of(s);
    if (potential) return Q_ * law_.dzeta(mu) / (s * s);
    return law_.zeta(mu) * s * s;
  };
  // deep inside the law is a pure power, integrand ~ s^(2-4b)
  const double s_tail = std::pow(Q_ * Q_ / 2e40, 0.25);
  const double a = std::min(r, s_tail);
  double sum = f(a) * a / (3.0 - 4.0 * b_);
  if (r > a) {
    std::vector<double> sb;
    for (double u : u_breaks_) sb.push_back(1.0 / u);
    sum += integrate_pieces(f, geometric_pieces(a, r, 10.0, sb), tol_);
  }
  return sum;
}

double FieldIntegrals::energy(double r) const {
  if (!(r > 0.0)) return E0_;
  if (std::isfinite(E0_) && r < kInnerSplit) return E0_ - s_integral(false, r);
  return u_integral(false, 1.0 / r);
}

double FieldIntegrals::potential(double r) const {
  if (!(r > 0.0)) return P0_;
  if (std::isfinite(P0_) && r < kInnerSplit) return P0_ - s_integral(true, r);
  return u_integral(true, 1.0 / r);
}

double FieldIntegrals::energy_inside(double r) const {
  if (!std::isfinite(E0_)) fail(ErrorKind::DivergentTotalEnergy, "field energy diverges at r = 0");
  if (r <= kInnerSplit) return s_integral(false, r);
  return E0_ - u_integral(false, 1.0 / r);
}

double FieldIntegrals::potential_drop_inside(double r) const {
  if (!std::isfinite(P0_)) fail(ErrorKind::DivergentTotalEnergy, "potential diverges at r = 0");
  if (r <= kInnerSplit) return s_integral(true, r);
  return P0_ - u_integral(true, 1.0 / r);
}

double FieldIntegrals::denergy(double r) const { return -law_.zeta(mu_of(r)) * r * r; }

double FieldIntegrals::dpotential(double r) const { return -Q_ * law_.dzeta(mu_of(r)) / (r * r); }

// ---------------------------------------------------------------------------

bool FieldMemo::covers(double r) const {
  if (E.empty()) return false;
  const double t = (std::log(r) - ln_lo) / ln_step;
  return t >= 0.0 && t <= double(E.size() - 1);
}

namespace {

double hermite(const std::vector<double>& y, const std::vector<double>& dy, double ln_lo,
               double h, double lr) {
  const double t = (lr - ln_lo) / h;
  std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), y.size() - 2);
  const double s = t - double(i);
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y[i] + (s3 - 2 * s2 + s) * h * dy[i] +
         (-2 * s3 + 3 * s2) * y[i + 1] + (s3 - s2) * h * dy[i + 1];
}

void fill_node(const FieldIntegrals& fi, FieldMemo& m, std::size_t i) {
  const double r = std::exp(m.ln_lo + m.ln_step * double(i));
  m.E[i] = fi.energy(r);
  m.dE[i] = r * fi.denergy(r);
  m.P[i] = fi.potential(r);
  m.dP[i] = r * fi.dpotential(r);
}

// switch a column to (ln y, d ln y / d ln r) when it is positive throughout
bool to_log(std::vector<double>& y, std::vector<double>& dy) {
  for (double v : y)
    if (!(v > 0.0) || !std::isfinite(v)) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    dy[i] /= y[i];
    y[i] = std::log(y[i]);
  }
  return true;
}

void finish(FieldMemo& m) {
  m.log_E = to_log(m.E, m.dE);
  m.log_P = to_log(m.P, m.dP);
}

FieldMemo memo_shell(std::size_t nodes, double r_lo, double r_hi) {
  if (nodes < 2 || !(r_lo > 0.0) || !(r_hi > r_lo))
    fail(ErrorKind::InvalidArgument, "bad memo grid");
  FieldMemo m;
  m.ln_lo = std::log(r_lo);
  m.ln_step = (std::log(r_hi) - m.ln_lo) / double(nodes - 1);
  m.E.resize(nodes);
  m.dE.resize(nodes);
  m.P.resize(nodes);
  m.dP.resize(nodes);
  return m;
}

}  // namespace

double FieldMemo::energy(double r) const {
  const double v = hermite(E, dE, ln_lo, ln_step, std::log(r));
  return log_E ? std::exp(v) : v;
}

double FieldMemo::potential(double r) const {
  const double v = hermite(P, dP, ln_lo, ln_step, std::log(r));
  return log_P ? std::exp(v) : v;
}

FieldMemo tabulate_fields_serial(const FieldIntegrals& fi, std::size_t nodes, double r_lo,
                                 double r_hi) {
  FieldMemo m = memo_shell(nodes, r_lo, r_hi);
  for (std::size_t i = 0; i < nodes; ++i) fill_node(fi, m, i);
  finish(m);
  return m;
}

FieldMemo tabulate_fields(const FieldIntegrals& fi, std::size_t nodes, double r_lo, double r_hi) {
  FieldMemo m = memo_shell(nodes, r_lo, r_hi);
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t i = 0; i < nodes; ++i) {
    try {
      fill_node(fi, m, i);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  finish(m);
  return m;
}

// ---------------------------------------------------------------------------

const char* to_string(HorizonKind kind) {
  switch (kind) {
    case HorizonKind::None: return "none";
    case HorizonKind::Horizons: return "horizons";
    case HorizonKind::SingleRoot: return "single_root";
  }
  return "?";
}

HorizonStatus detect_horizon_rwn(double M, double Q, double G) {
  HorizonStatus h;
  if (!(G > 0.0) || !(M > 0.0)) return h;
  const double disc = G * M * M - Q * Q;
  if (disc < 0.0) return h;
  const double root = std::sqrt(G * disc);
  h.kind = HorizonKind::Horizons;
  h.r_plus = G * M + root;
  // r- = G Q^2 / r+ avoids cancellation
  h.r_minus = G * Q * Q / h.r_plus;
  return h;
}

struct SpacetimeProfile::Data {
  Data(VacuumLaw l, NucleusParams n, PhysicalConstants c, FieldIntegrals f)
      : law(std::move(l)), nucleus(n), consts(c), fi(std::move(f)) {}

  VacuumLaw law;
  NucleusParams nucleus;
  PhysicalConstants consts;
  FieldIntegrals fi;
  FieldMemo memo;
  bool maxwell = false;
  double M = 0, Q = 0, G = 0;
  double bare = 0;
  bool borderline = false;
  SingularityData sing;
  HorizonStatus horizon;
  std::optional<double> r_zero, r_core;

  double energy(double r) const {
    if (maxwell) return Q * Q / (2.0 * r);
    if (memo.covers(r)) return memo.energy(r);
    return fi.energy(r);
  }
  double mass(double r) const {
    if (!maxwell && fi.finite_energy() && r < kInnerSplit) return bare + fi.energy_inside(r);
    return M - energy(r);
  }
};

namespace {

// bisection on a monotone sign change of g over [lo, hi] in log r
template <class F>
double log_bisect(F g, double lo, double hi) {
  double glo = g(lo);
  for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-15; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double gm = g(mid);
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo * hi);
}

}  // namespace

SpacetimeProfile SpacetimeProfile::build(const VacuumLaw& law, const NucleusParams& nucleus,
                                         const PhysicalConstants& consts,
                                         const ProfileOptions& opt) {
  nucleus.validate();
  consts.validate();
  const double Q = nucleus.charge(consts);
  auto d = std::make_shared<Data>(law, nucleus, consts, FieldIntegrals(law, Q, opt.tol));
  d->maxwell = law.kind() == LawKind::Maxwell;
  d->M = nucleus.mass(consts);
  d->Q = Q;
  d->G = consts.G();
  const double b = d->fi.tail_exponent();
  d->borderline = d->fi.borderline();

  if (!d->maxwell && opt.memo_nodes >= 2) {
    d->memo = opt.parallel ? tabulate_fields(d->fi, opt.memo_nodes, opt.memo_lo, opt.memo_hi)
                           : tabulate_fields_serial(d->fi, opt.memo_nodes, opt.memo_lo, opt.memo_hi);
  }

  const bool finite = !d->maxwell && d->fi.finite_energy();
  d->bare = finite ? d->M - d->fi.energy_at_zero() : -kInf;
  // an exactly vanishing bare mass is a model input; quadrature noise is not
  if (std::abs(d->bare) < 1e-10 * d->M) d->bare = 0.0;

  // singularity data
  SingularityData& s = d->sing;
  s.tail_exponent = b;
  s.bare_mass = d->bare;
  if (d->maxwell) {
    s.alpha = 1.0;
    s.beta = 1.0;
    s.C0 = Q * Q / 2.0;
    s.Cbeta_prime = Q;
    s.Cbeta_dblprime = 0.0;
  } else if (!d->borderline) {
    double cb;
    if (auto c = law.tail_coefficient()) {
      cb = *c;
    } else {
      const double mu = 1e122;
      cb = law.zeta(mu) / std::pow(mu, b);
    }
    const double denom = 4.0 * b - 3.0;
    s.beta = denom;
    s.Cbeta_prime = b * cb * std::pow(2.0, 1.0 - b) * std::pow(Q, 2.0 * b - 1.0) / denom;
    if (finite) {
      s.alpha = 0.0;
      s.C0 = -d->bare;
      s.Cbeta_dblprime = d->fi.potential_at_zero();
    } else {
      s.alpha = denom;
      s.C0 = cb * std::pow(Q, 2.0 * b) * std::pow(2.0, -b) / denom;
      const double r = kInnerSplit;
      s.Cbeta_dblprime = d->fi.potential(r) - s.Cbeta_prime * std::pow(r, -s.beta);
    }
  }

  // sign change of m
  if (d->maxwell) {
    d->r_zero = Q * Q / (2.0 * d->M);
  } else if (!(finite && d->bare >= 0.0)) {
    double hi = Q * Q / (2.0 * d->M);
    double lo = hi;
    while (d->energy(lo) <= d->M && lo > 1e-280) lo *= 0.1;
    if (d->energy(lo) > d->M) {
      d->r_zero = log_bisect([&](double r) { return d->energy(r) - d->M; }, lo, hi);
    }
  }

  // inner core where 2G|m|/r passes through 1
  if (d->G > 0.0 && d->r_zero) {
    if (d->maxwell) {
      const double G = d->G, M = d->M;
      d->r_core = G * Q * Q / (G * M + std::sqrt(G * G * M * M + G * Q * Q));
    } else {
      auto h = [&](double r) { return r + 2.0 * d->G * d->mass(r); };
      double lo = *d->r_zero;
      while (h(lo) >= 0.0 && lo > 1e-280) lo *= 0.1;
      if (h(lo) < 0.0) d->r_core = log_bisect(h, lo, *d->r_zero);
    }
  }

  // horizons
  if (d->maxwell) {
    d->horizon = detect_horizon_rwn(d->M, Q, d->G);
  } else if (d->G > 0.0) {
    const double rs = 2.0 * d->G * d->M;
    double lo;
    if (finite && d->bare > 0.0) {
      lo = 1e-3 * 2.0 * d->G * d->bare;
    } else {
      lo = d->r_zero ? *d->r_zero : rs;
    }
    std::vector<double> roots;
    if (lo < rs) {
      auto g = [&](double r) { return r - 2.0 * d->G * d->mass(r); };
      const int n = std::max(8, static_cast<int>(50.0 * std::log10(rs / lo)));
      double prev_r = lo, prev = g(lo);
      for (int i = 1; i <= n; ++i) {
        const double r = lo * std::pow(rs / lo, double(i) / n);
        const double v = g(r);
        if ((v < 0.0) != (prev < 0.0)) roots.push_back(log_bisect(g, prev_r, r));
        prev_r = r;
        prev = v;
      }
    }
    if (roots.size() == 1) {
      d->horizon.kind = HorizonKind::SingleRoot;
      d->horizon.r_plus = roots[0];
    } else if (roots.size() >= 2) {
      d->horizon.kind = HorizonKind::Horizons;
      d->horizon.r_minus = roots.front();
      d->horizon.r_plus = roots.back();
    }
  }
  return SpacetimeProfile(d);
}

const VacuumLaw& SpacetimeProfile::law() const { return d_->law; }
const NucleusParams& SpacetimeProfile::nucleus() const { return d_->nucleus; }
const PhysicalConstants& SpacetimeProfile::constants() const { return d_->consts; }
const FieldIntegrals& SpacetimeProfile::fields() const { return d_->fi; }
bool SpacetimeProfile::is_maxwell() const { return d_->maxwell; }
double SpacetimeProfile::M() const { return d_->M; }
double SpacetimeProfile::Q() const { return d_->Q; }
double SpacetimeProfile::G() const { return d_->G; }

double SpacetimeProfile::mass(double r) const { return d_->mass(r); }

double SpacetimeProfile::dmass(double r) const {
  if (d_->maxwell) return d_->Q * d_->Q / (2.0 * r * r);
  return -d_->fi.denergy(r);
}

double SpacetimeProfile::phi(double r) const {
  if (d_->maxwell) return d_->Q / r;
  if (d_->memo.covers(r)) return d_->memo.potential(r);
  return d_->fi.potential(r);
}

double SpacetimeProfile::dphi(double r) const {
  if (d_->maxwell) return -d_->Q / (r * r);
  return d_->fi.dpotential(r);
}

double SpacetimeProfile::energy(double r) const { return d_->energy(r); }

double SpacetimeProfile::f2(double r) const { return 1.0 - 2.0 * d_->G * mass(r) / r; }

double SpacetimeProfile::energy_direct(double r) const {
  if (d_->maxwell) return d_->Q * d_->Q / (2.0 * r);
  return d_->fi.energy(r);
}

double SpacetimeProfile::phi_direct(double r) const {
  if (d_->maxwell) return d_->Q / r;
  return d_->fi.potential(r);
}

double SpacetimeProfile::bare_mass() const { return d_->bare; }
bool SpacetimeProfile::borderline() const { return d_->borderline; }

const SingularityData& SpacetimeProfile::singularity() const {
  if (d_->borderline)
    fail(ErrorKind::BorderlineLaw, "tail exponent within 1e-3 of 3/4 (logarithmic case)");
  return d_->sing;
}

const HorizonStatus& SpacetimeProfile::horizon() const { return d_->horizon; }
std::optional<double> SpacetimeProfile::mass_zero() const { return d_->r_zero; }
std::optional<double> SpacetimeProfile::core_radius() const { return d_->r_core; }

SingularityData extract_singularity_data(const SpacetimeProfile& profile) {
  return profile.singularity();
}

HorizonStatus detect_horizon(const SpacetimeProfile& profile) { return profile.horizon(); }

// ---------------------------------------------------------------------------

double hoffmann_energy_coefficient() { return std::beta(0.25, 0.25) / 6.0; }

double hoffmann_field_bound(const NucleusParams& nucleus, const PhysicalConstants& consts) {
  const double M = nucleus.mass(consts);
  const double Qe = nucleus.charge(consts);
  const double k = hoffmann_energy_coefficient();
  return M * M / (Qe * Qe * Qe * k * k);
}

bool hoffmann_no_bh_condition(const NucleusParams& nucleus, const PhysicalConstants& consts,
                              double b_born) {
  if (!(b_born > 0.0)) return false;
  return b_born >= hoffmann_field_bound(nucleus, consts);
}

bool hoffmann_zero_bare_mass_condition(const NucleusParams& nucleus,
                                       const PhysicalConstants& consts) {
  const double k = hoffmann_energy_coefficient();
  const double A = nucleus.A();
  const double Z = nucleus.Z;
  // e^2 / (G m_p^2) = epsilon / gamma_pe
  return 1.0 < 0.5 * k * k * (Z * Z) / (A * A) * (consts.epsilon / consts.gamma_pe);
}

}  // namespace gravdirac
