#include "emsr/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace emsr {

namespace {

const cplx I_UNIT(0.0, 1.0);

/// Single-spin fringe factor <e^{2 i theta sigma_x(t0)}>.
cplx single_spin_factor(const SpinState& state, double theta, double t0,
                        const BiasField& field) {
  const double sx = sigma_x_expectation(state, field, t0);
  return cplx(std::cos(2.0 * theta), sx * std::sin(2.0 * theta));
}

/// State vector of a pure spin-1/2 state from its Bloch vector.
Eigen::Vector2cd pure_state_vector(const SpinState& state) {
  const Vec3 s = state.bloch();
  if (std::abs(s.norm() - 1.0) > 1e-9)
    throw std::domain_error("ds_bruteforce: single-spin state must be pure");
  const double polar = std::acos(std::clamp(s.z(), -1.0, 1.0));
  const double azimuth = std::atan2(s.y(), s.x());
  Eigen::Vector2cd psi;
  psi << std::cos(0.5 * polar),
      std::exp(I_UNIT * azimuth) * std::sin(0.5 * polar);
  return psi;
}

/// w += op acting on site `site` of v (site 0 = most significant bit).
void apply_site_operator(const Mat2& op, const Eigen::VectorXcd& v, int site,
                         int n, Eigen::VectorXcd& w) {
  const long stride = 1L << (n - 1 - site);
  const long size = v.size();
  for (long base = 0; base < size; base += 2 * stride) {
    for (long off = 0; off < stride; ++off) {
      const long i0 = base + off;
      const long i1 = i0 + stride;
      w(i0) += op(0, 0) * v(i0) + op(0, 1) * v(i1);
      w(i1) += op(1, 0) * v(i0) + op(1, 1) * v(i1);
    }
  }
}

Eigen::VectorXcd apply_collective(const Mat2& op, const Eigen::VectorXcd& v, int n) {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(v.size());
  for (int site = 0; site < n; ++site) apply_site_operator(op, v, site, n, w);
  return w;
}

}  // namespace

SpinEnsemble spin_ensemble(long n_spins, const SpinState& single,
                           const SpinSpecies& species) {
  if (n_spins < 1)
    throw std::domain_error("spin_ensemble: n_spins must be >= 1");
  return SpinEnsemble{n_spins, single, species};
}

cplx ds_factor(const SpinEnsemble& ens, double theta, double t0,
               const BiasField& field) {
  const cplx base = single_spin_factor(ens.single, theta, t0, field);
  return std::polar(std::pow(std::abs(base), double(ens.n_spins)),
                    double(ens.n_spins) * std::arg(base));
}

cplx ds_bruteforce(const SpinEnsemble& ens, double theta, double t0,
                   const BiasField& field) {
  const int n = int(ens.n_spins);
  if (ens.n_spins > 12)
    throw std::length_error("ds_bruteforce: capacity is n_spins <= 12");

  const Eigen::Vector2cd psi = pure_state_vector(ens.single);
  const long size = 1L << n;
  Eigen::VectorXcd state(size);
  for (long b = 0; b < size; ++b) {
    cplx amp = 1.0;
    for (int site = 0; site < n; ++site)
      amp *= psi((b >> (n - 1 - site)) & 1);
    state(b) = amp;
  }

  // w = exp(i a S) state with S = sum_m sigma_x,m(t0), by a scaled Taylor
  // series: ||a S|| <= |a| n, halve until the per-step argument is <= 1, so
  // the series converges without cancellation.
  const Mat2 m = pauli(sigma_x_axis_at(field, t0));
  const double a = 2.0 * theta;
  int halvings = 0;
  double step = a;
  while (std::abs(step) * n > 1.0 && halvings < 60) {
    step *= 0.5;
    ++halvings;
  }
  const long reps = 1L << halvings;
  Eigen::VectorXcd w = state;
  for (long rep = 0; rep < reps; ++rep) {
    Eigen::VectorXcd term = w;
    Eigen::VectorXcd acc = w;
    for (int j = 1; j <= 40; ++j) {
      term = (I_UNIT * step / double(j)) * apply_collective(m, term, n);
      acc += term;
      if (term.norm() < 1e-18 * acc.norm()) break;
    }
    w = acc;
  }
  return state.dot(w);  // Eigen's dot conjugates the left argument
}

double ensemble_detection_probability(const SpinEnsemble& ens, double theta,
                                      double phi, double t0,
                                      const BiasField& field) {
  const cplx d_s = ds_factor(ens, theta, t0, field);
  return 0.5 * (1.0 + (std::exp(-I_UNIT * phi) * d_s).real());
}

EnsembleCrb ensemble_crb(const SpinEnsemble& ens, long n_electrons,
                         double theta, double phi, double t0,
                         const BiasField& field) {
  if (n_electrons < 1)
    throw std::domain_error("ensemble_crb: n_electrons must be >= 1");
  const double n_s = double(ens.n_spins);
  const double ne = double(n_electrons);
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);

  EnsembleCrb out{};
  out.coherent = 1.0 / (4.0 * ne * n_s * n_s);

  const double den_unpol =
      ne * std::pow(2.0 * n_s * s * std::pow(c, n_s - 1.0), 2.0);
  out.unpolarized = den_unpol > 0.0
                        ? (1.0 - std::pow(c, 2.0 * n_s)) / den_unpol
                        : std::numeric_limits<double>::infinity();

  // Single-shot Fisher information of the D_S model at (theta, phi).
  const double sx = sigma_x_expectation(ens.single, field, t0);
  const cplx base(c, sx * s);
  const cplx d_s = ds_factor(ens, theta, t0, field);
  const cplx dlog = base != cplx(0.0)
                        ? cplx(-2.0 * s, 2.0 * sx * c) / base
                        : cplx(0.0);
  const double p = 0.5 * (1.0 + (std::exp(-I_UNIT * phi) * d_s).real());
  const double dp =
      0.5 * (std::exp(-I_UNIT * phi) * (n_s * dlog) * d_s).real();
  const double pq = p * (1.0 - p);
  if (pq > 0.0 && std::abs(dp) > 1e-14) {
    out.numeric = pq / (ne * dp * dp);
    out.identifiable = true;
  } else {
    out.numeric = std::numeric_limits<double>::infinity();
    out.identifiable = false;
  }
  return out;
}

double thermal_polarization(const SpinSpecies& species, double B0,
                            double temperature) {
  if (!(temperature > 0.0))
    throw std::domain_error("thermal_polarization: temperature must be > 0");
  if (B0 < 0.0) throw std::domain_error("thermal_polarization: B0 must be >= 0");
  const auto& k = codata2018;
  return species.gamma * k.hbar * B0 / (2.0 * k.k_B * temperature);
}

double column_phase_polarized(long n_spins, const SpinSpecies& species,
                              double d, double polarization) {
  if (n_spins < 1)
    throw std::domain_error("column_phase: n_spins must be >= 1");
  const double theta = interaction_strength(d, species).theta;
  return 4.0 * theta * double(n_spins) * polarization;
}

double column_phase(long n_spins, const SpinSpecies& species, double d,
                    double B0, double temperature) {
  return column_phase_polarized(n_spins, species, d,
                                thermal_polarization(species, B0, temperature));
}

double nuclear_theta(double d, double g_I) {
  if (!(d > 0.0)) throw std::domain_error("nuclear_theta: d must be > 0");
  const auto& k = codata2018;
  return k.mu0 * k.e * k.mu_N * g_I / (4.0 * pi * k.hbar * d);
}

namespace {
MagnetizedSphere make_sphere(double radius, double n_spins, double density,
                             const SpinSpecies& species, double B0,
                             double temperature) {
  if (!(radius > 0.0))
    throw std::domain_error("magnetized sphere: radius must be > 0");
  if (!(n_spins > 0.0))
    throw std::domain_error("magnetized sphere: n_spins must be > 0");
  if (!(temperature > 0.0))
    throw std::domain_error("magnetized sphere: temperature must be > 0");
  return MagnetizedSphere{radius, n_spins, density,     species,
                          B0,     temperature, species.spin};
}
}  // namespace

MagnetizedSphere sphere_from_count(double radius, double n_spins,
                                   const SpinSpecies& species, double B0,
                                   double temperature) {
  const double volume = 4.0 / 3.0 * pi * radius * radius * radius;
  return make_sphere(radius, n_spins, n_spins / volume, species, B0, temperature);
}

MagnetizedSphere sphere_from_density(double radius, double spin_density,
                                     const SpinSpecies& species, double B0,
                                     double temperature) {
  const double volume = 4.0 / 3.0 * pi * radius * radius * radius;
  return make_sphere(radius, spin_density * volume, spin_density, species, B0,
                     temperature);
}

double sphere_susceptibility(const MagnetizedSphere& sphere) {
  const auto& k = codata2018;
  const double gh = sphere.species.gamma * k.hbar;
  return k.mu0 * sphere.spin_density * gh * gh * sphere.spin *
         (sphere.spin + 1.0) / (3.0 * k.k_B * sphere.temperature);
}

double sphere_phase(const MagnetizedSphere& sphere) {
  const auto& k = codata2018;
  const double b_in = 2.0 / 3.0 * sphere_susceptibility(sphere) * sphere.B0;
  const double flux = pi * sphere.radius * sphere.radius * b_in;
  return -k.e / k.hbar * flux;
}

}  // namespace emsr
