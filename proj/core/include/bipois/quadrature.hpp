#pragma once

#include <functional>

namespace bipois {

struct QuadratureResult {
  double value = 0.0;
  int refinement_level = 0;  // panels for Gauss-Legendre, level for tanh-sinh
  bool converged = false;
};

/// Composite 16-point Gauss-Legendre on [a, b] with panel-count doubling
/// until two successive estimates differ by less than tol. Intended for
/// smooth integrands.
QuadratureResult gauss_legendre_adaptive(const std::function<double(double)>& f,
                                         double a, double b, double tol,
                                         int max_panels = 1 << 14);

/// tanh-sinh (double exponential) quadrature on (a, b). Robust to algebraic
/// endpoint singularities such as x^(p-1) with p in (0,1), which show up in
/// gamma densities with shape below one. Refines by level doubling until the
/// change is below tol.
QuadratureResult tanh_sinh(const std::function<double(double)>& f, double a,
                           double b, double tol, int max_level = 12);

}  // namespace bipois
