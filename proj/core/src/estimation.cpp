#include "emsr/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace emsr {

namespace {

// Fringe model in the linear form p+ = (1/2)(1 + A) with
//   A(theta) = cos(phi) cos(2 theta) + sin(phi) sin(2 theta) sx,
//   B(theta) = dA/dtheta / 2 = -cos(phi) sin(2 theta) + sin(phi) cos(2 theta) sx.
double fringe_a(double theta, double phi, double sx) {
  return std::cos(phi) * std::cos(2.0 * theta) +
         std::sin(phi) * std::sin(2.0 * theta) * sx;
}

double fringe_b(double theta, double phi, double sx) {
  return -std::cos(phi) * std::sin(2.0 * theta) +
         std::sin(phi) * std::cos(2.0 * theta) * sx;
}

}  // namespace

double detection_probability_dtheta(double theta, double phi, double sx) {
  return fringe_b(theta, phi, sx);
}

FisherInformation fisher_information(double theta, double phi, double sx) {
  if (std::abs(sx) > 1.0 + 1e-12)
    throw std::domain_error("fisher_information: |sx| must be <= 1");
  const double a = fringe_a(theta, phi, sx);
  const double b = fringe_b(theta, phi, sx);
  const double den = 1.0 - a * a;  // 4 p (1-p)
  if (den > 1e-14) return {4.0 * b * b / den, false};

  // p+ pinned at an endpoint; return the limit along theta. The step is
  // large enough that 1 - a^2 is computed without catastrophic cancellation.
  auto at = [&](double th) {
    const double aa = fringe_a(th, phi, sx);
    const double bb = fringe_b(th, phi, sx);
    const double dd = 1.0 - aa * aa;
    return dd > 0.0 ? 4.0 * bb * bb / dd
                    : std::numeric_limits<double>::infinity();
  };
  const double lo = at(theta - 1e-4), hi = at(theta + 1e-4);
  return {0.5 * (lo + hi), true};
}

CrbResult crb(double theta, double phi, double sx, long n_electrons) {
  if (n_electrons < 1) throw std::domain_error("crb: n_electrons must be >= 1");
  const double a = fringe_a(theta, phi, sx);
  const double b = fringe_b(theta, phi, sx);
  // |dp/dtheta| at the scale of floating-point noise on the O(1) model terms
  // means theta is not identifiable at this working point
  if (std::abs(b) < 1e-14)
    return {std::numeric_limits<double>::infinity(), false};
  return {(1.0 - a * a) / (4.0 * double(n_electrons) * b * b), true};
}

long sample_counts(double p, long n, const CounterRng& rng) {
  if (p < 0.0 || p > 1.0)
    throw std::domain_error("sample_counts: p must be in [0, 1]");
  long count = 0;
  for (long i = 0; i < n; ++i) count += rng.uniform(std::uint64_t(i)) < p;
  return count;
}

ShotRecord sample_shots(double theta, double phi, double sx, long n_electrons,
                        std::uint64_t seed) {
  if (n_electrons < 1)
    throw std::domain_error("sample_shots: n_electrons must be >= 1");
  const double p = detection_probability(theta, phi, sx);
  const CounterRng rng(seed);
  const long plus = sample_counts(p, n_electrons, rng);
  return ShotRecord{plus, n_electrons - plus, phi, seed, theta, sx};
}

EstimatorResult estimate_theta_mle(const ShotRecord& record, double phi,
                                   double sx) {
  const long n = record.n_electrons();
  if (n < 1) throw std::domain_error("estimate_theta_mle: empty record");

  // A(theta) = R cos(2 theta - delta); invert the binomial mean on the
  // branch 2 theta >= delta, which covers theta in [0, pi/2] at phi = 0.
  const double rx = std::cos(phi);
  const double ry = std::sin(phi) * sx;
  const double r = std::hypot(rx, ry);
  if (r < 1e-12)
    throw std::domain_error("estimate_theta_mle: configuration not identifiable");
  const double delta = std::atan2(ry, rx);

  const double p_hat = double(record.n_plus) / double(n);
  double y = (2.0 * p_hat - 1.0) / r;
  EstimatorResult out;
  if (y > 1.0 || y < -1.0) {
    y = std::clamp(y, -1.0, 1.0);
    out.clamped = true;
  }
  out.theta_hat = 0.5 * (delta + std::acos(y));
  out.n_trials = 1;
  const CrbResult bound = crb(out.theta_hat, phi, sx, n);
  out.crb = bound.value;
  out.variance = bound.value;
  return out;
}

EstimatorResult run_mle_study(const MleStudy& study) {
  if (study.n_trials < 2)
    throw std::domain_error("run_mle_study: need at least 2 trials");
  const double p =
      detection_probability(study.theta_true, study.phi, study.sx);
  const CounterRng master(study.seed);

  std::vector<double> estimates;
  estimates.reserve(std::size_t(study.n_trials));
  bool clamped = false;
  for (int trial = 0; trial < study.n_trials; ++trial) {
    const CounterRng rng = master.stream(std::uint64_t(trial));
    const long plus = sample_counts(p, study.n_electrons, rng);
    ShotRecord rec{plus, study.n_electrons - plus, study.phi, rng.seed(),
                   study.theta_true, study.sx};
    const EstimatorResult one = estimate_theta_mle(rec, study.phi, study.sx);
    clamped = clamped || one.clamped;
    estimates.push_back(one.theta_hat);
  }

  double mean = 0.0;
  for (double th : estimates) mean += th;
  mean /= double(estimates.size());
  double var = 0.0;
  for (double th : estimates) var += (th - mean) * (th - mean);
  var /= double(estimates.size() - 1);

  EstimatorResult out;
  out.theta_hat = mean;
  out.variance = var;
  out.n_trials = study.n_trials;
  out.crb = crb(study.theta_true, study.phi, study.sx, study.n_electrons).value;
  out.clamped = clamped;
  return out;
}

FringeFit fit_fringe(const std::vector<FringeScanPoint>& scan) {
  if (scan.size() < 3)
    throw std::domain_error("fit_fringe: need at least 3 scan points");
  double lo = scan.front().phi, hi = scan.front().phi;
  long distinct = 1;
  for (std::size_t i = 1; i < scan.size(); ++i) {
    lo = std::min(lo, scan[i].phi);
    hi = std::max(hi, scan[i].phi);
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j)
      if (scan[j].phi == scan[i].phi) { seen = true; break; }
    if (!seen) ++distinct;
  }
  if (distinct < 3)
    throw std::domain_error("fit_fringe: need at least 3 distinct phases");
  if (!(hi - lo > pi))
    throw std::domain_error("fit_fringe: phase grid must span more than pi");

  double scc = 0, scs = 0, sss = 0, bc = 0, bs = 0;
  for (const auto& pt : scan) {
    const double c = std::cos(pt.phi), s = std::sin(pt.phi);
    const double y = pt.p_plus - 0.5;
    scc += c * c;
    scs += c * s;
    sss += s * s;
    bc += c * y;
    bs += s * y;
  }
  const double det = scc * sss - scs * scs;
  if (std::abs(det) < 1e-12 * std::max(1.0, scc * sss))
    throw std::domain_error("fit_fringe: rank-deficient phase grid");
  const double a = (sss * bc - scs * bs) / det;
  const double b = (scc * bs - scs * bc) / det;

  FringeFit fit;
  const double amp = std::hypot(a, b);
  fit.visibility = 2.0 * amp;
  fit.phase_identifiable = amp > 1e-12;
  fit.delta_phi = fit.phase_identifiable ? std::atan2(b, a) : 0.0;

  // Covariance of (a, b) from the residual variance.
  double ssr = 0.0;
  for (const auto& pt : scan) {
    const double model = 0.5 + a * std::cos(pt.phi) + b * std::sin(pt.phi);
    ssr += (pt.p_plus - model) * (pt.p_plus - model);
  }
  const double dof = double(scan.size()) - 2.0;
  const double sigma2 = dof > 0 ? ssr / dof : 0.0;
  const double caa = sigma2 * sss / det;
  const double cbb = sigma2 * scc / det;
  const double cab = -sigma2 * scs / det;
  if (fit.phase_identifiable) {
    const double ja = -b / (amp * amp), jb = a / (amp * amp);
    fit.delta_phi_err =
        std::sqrt(std::max(0.0, ja * ja * caa + 2 * ja * jb * cab + jb * jb * cbb));
    const double ka = 2.0 * a / amp, kb = 2.0 * b / amp;
    fit.visibility_err =
        std::sqrt(std::max(0.0, ka * ka * caa + 2 * ka * kb * cab + kb * kb * cbb));
  } else {
    fit.delta_phi_err = std::numeric_limits<double>::infinity();
    fit.visibility_err = 2.0 * std::sqrt(std::max(caa, cbb));
  }
  return fit;
}

FringeFit fit_fringe_counts(const std::vector<double>& phi,
                            const std::vector<long>& n_plus,
                            const std::vector<long>& n_minus) {
  if (phi.size() != n_plus.size() || phi.size() != n_minus.size())
    throw std::domain_error("fit_fringe_counts: mismatched lengths");
  std::vector<FringeScanPoint> scan(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const long total = n_plus[i] + n_minus[i];
    if (total <= 0)
      throw std::domain_error("fit_fringe_counts: empty bin");
    scan[i] = {phi[i], double(n_plus[i]) / double(total)};
  }
  return fit_fringe(scan);
}

long electrons_for_phase(double delta_phi, double snr) {
  if (!(delta_phi > 0.0))
    throw std::domain_error("electrons_for_phase: delta_phi must be > 0");
  if (!(snr > 0.0))
    throw std::domain_error("electrons_for_phase: snr must be > 0");
  const double n = std::ceil((snr / delta_phi) * (snr / delta_phi));
  if (n > 9e18)
    throw std::domain_error("electrons_for_phase: count overflows");
  return long(n);
}

}  // namespace emsr
