#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature. Improper integrals over the
// real line are compactified with z = scale*tan(u) before subdividing, so
// the integration domain is finite and the integrand stays smooth when its
// width is of order `scale`.

#include <functional>

#include "emsr/errors.hpp"

namespace emsr {

struct QuadratureOptions {
  double rel_tol = 1e-9;
  int max_evaluations = 1000000;
};

struct QuadratureResult {
  double value;
  double error;     ///< absolute error estimate
  int evaluations;
};

/// Integral of f over the finite interval [a, b].
/// Throws ConvergenceError (with the estimate reached) if the evaluation
/// budget runs out before the relative tolerance is met.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opts = {});

/// Integral of f over (-inf, inf) via the substitution z = scale*tan(u).
QuadratureResult integrate_real_line(const std::function<double(double)>& f,
                                     double scale,
                                     const QuadratureOptions& opts = {});

}  // namespace emsr
