#pragma once

// Integration over theta in [0, pi]: adaptive Gauss-Kronrod and a fixed
// trapezoidal grid.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>
#include <numbers>
#include <string>

#include "awq/errors.hpp"

namespace awq {

enum class QuadratureRule { adaptive, fixed_theta_grid };

struct QuadratureSpec {
  int node_count = 64;
  QuadratureRule rule = QuadratureRule::adaptive;
  double abs_tol = 1e-10;

  void validate() const {
    if (node_count < 16)
      throw NumericError(ErrorKind::parameter_out_of_range, "quadrature needs at least 16 nodes");
    if (!(abs_tol > 0.0))
      throw NumericError(ErrorKind::parameter_out_of_range, "quadrature tolerance must be positive");
  }
};

template <class T>
struct QuadratureResult {
  T value;
  double error_estimate = 0.0;
};

/// Integral of f over [0, pi].
///
/// The adaptive rule refines 15-point Kronrod panels until the estimated
/// error drops below abs_tol; the grid rule is the composite trapezoid on
/// node_count equal panels, which converges geometrically for smooth even
/// 2pi-periodic integrands such as the polynomial-times-weight products here.
template <class F>
auto integrate_theta(F&& f, const QuadratureSpec& qs)
    -> QuadratureResult<decltype(f(0.0))> {
  using T = decltype(f(0.0));
  qs.validate();
  constexpr double pi = std::numbers::pi;
  constexpr double kRelativeTarget = 1e-12;
  if (qs.rule == QuadratureRule::adaptive) {
    double err = 0.0;
    const T v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, 0.0, pi, /*max_depth=*/12, kRelativeTarget, &err);
    if (!std::isfinite(std::abs(v)))
      throw NumericError(ErrorKind::quadrature_failure, "integrand produced a non-finite value");
    if (err > qs.abs_tol && err > kRelativeTarget * std::abs(v)) {
      std::ostringstream msg;
      msg << "adaptive quadrature error estimate " << err << " above tolerance " << qs.abs_tol;
      throw NumericError(ErrorKind::quadrature_failure, msg.str());
    }
    return {v, err};
  }
  const int m = qs.node_count;
  const double h = pi / m;
  T sum = 0.5 * (f(0.0) + f(pi));
  for (int j = 1; j < m; ++j) sum += f(j * h);
  const T v = sum * h;
  if (!std::isfinite(std::abs(v)))
    throw NumericError(ErrorKind::quadrature_failure, "integrand produced a non-finite value");
  // difference against the half-resolution grid
  T coarse = 0.5 * (f(0.0) + f(pi));
  for (int j = 2; j < m; j += 2) coarse += f(j * h);
  const double err = m % 2 == 0 ? std::abs(v - coarse * (2.0 * h)) : 0.0;
  return {v, err};
}

}  // namespace awq
