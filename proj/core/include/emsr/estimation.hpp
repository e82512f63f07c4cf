#pragma once

// Statistical layer: Fisher information of a single detection event, the
// Cramer-Rao bound, reproducible Bernoulli shot sampling, closed-form
// maximum-likelihood inversion of the fringe model, and linear least-squares
// fringe fitting.

#include <cstdint>
#include <vector>

#include "emsr/quantum.hpp"
#include "emsr/rng.hpp"

namespace emsr {

struct ShotRecord {
  long n_plus = 0;
  long n_minus = 0;
  double phi = 0.0;
  std::uint64_t seed = 0;
  double theta = 0.0;      ///< model parameter used to draw the shots
  double sx_expect = 0.0;  ///< model parameter used to draw the shots

  long n_electrons() const { return n_plus + n_minus; }
};

/// Analytic d(p+)/d(theta) of the closed-form fringe model.
double detection_probability_dtheta(double theta, double phi, double sx);

struct FisherInformation {
  double value;   ///< [1/rad^2] per electron
  bool singular;  ///< p+ hit {0, 1}; value holds the analytic limit if finite
};

/// F_theta = (d_theta p+)^2 / (p+ (1-p+)).
FisherInformation fisher_information(double theta, double phi, double sx);

struct CrbResult {
  double value;       ///< [rad^2]
  bool identifiable;  ///< false when d_theta p+ = 0
};

/// Closed-form Cramer-Rao bound for N_e electrons; equals
/// 1/(N_e * fisher_information) where defined.
CrbResult crb(double theta, double phi, double sx, long n_electrons);

/// N_e independent Bernoulli(p+) draws, bit-reproducible from (seed, N_e)
/// regardless of evaluation order.
ShotRecord sample_shots(double theta, double phi, double sx, long n_electrons,
                        std::uint64_t seed);

/// Count of successes among n Bernoulli(p) draws from the given stream.
long sample_counts(double p, long n, const CounterRng& rng);

struct EstimatorResult {
  double theta_hat = 0.0;
  double variance = 0.0;  ///< empirical over trials, or CRB-based for one record
  long n_trials = 1;
  double crb = 0.0;
  bool clamped = false;  ///< count ratio fell outside the achievable p+ range
};

/// Closed-form MLE: writes the model as A(theta) = R cos(2 theta - delta)
/// and inverts the binomial mean on the branch 2 theta - delta in [0, pi]
/// (theta in [0, pi/2] at phi = 0). Ratios outside the achievable range are
/// clamped (and flagged).
EstimatorResult estimate_theta_mle(const ShotRecord& record, double phi,
                                   double sx);

struct MleStudy {
  double theta_true;
  double phi;
  double sx;
  long n_electrons;
  int n_trials;
  std::uint64_t seed;
};

/// Repeated-trial Monte Carlo: theta_hat = mean estimate, variance =
/// empirical variance over trials, crb = bound at the true parameters.
EstimatorResult run_mle_study(const MleStudy& study);

struct FringeScanPoint {
  double phi;
  double p_plus;  ///< measured fraction at this phase
};

struct FringeFit {
  double delta_phi = 0.0;
  double visibility = 0.0;
  double delta_phi_err = 0.0;    ///< 1-sigma from the linear fit covariance
  double visibility_err = 0.0;
  bool phase_identifiable = true;  ///< false when the fitted amplitude is ~0
};

/// Least squares for p+ = 1/2 + a cos(phi) + b sin(phi); the model is exactly
/// linear in (a, b), so no iteration or initialization is needed. Then
/// delta_phi = atan2(b, a) and V = 2 sqrt(a^2 + b^2).
/// Requires >= 3 distinct phases spanning more than pi.
FringeFit fit_fringe(const std::vector<FringeScanPoint>& scan);

/// Convenience overload from counted shots.
FringeFit fit_fringe_counts(const std::vector<double>& phi,
                            const std::vector<long>& n_plus,
                            const std::vector<long>& n_minus);

/// Electrons needed to resolve a phase delta_phi at the given SNR under
/// projection-noise-limited phase estimation, sigma_phi = 1/sqrt(N_e) at
/// unit visibility: N_e = ceil((snr/delta_phi)^2).
long electrons_for_phase(double delta_phi, double snr);

}  // namespace emsr
