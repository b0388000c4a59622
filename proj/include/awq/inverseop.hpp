#pragma once

// An integral kernel proposed to invert the lowering operator, and the
// quadrature check of the inversion identity.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "awq/awpoly.hpp"
#include "awq/errors.hpp"
#include "awq/hyperseries.hpp"
#include "awq/qcore.hpp"
#include "awq/quadrature.hpp"

namespace awq {

/// How to read the kernel's series.
///
/// `as_printed`: the 7-over-7 parameter lists exactly as displayed, including
/// the repeated +sqrt denominator. `vwp_sign`: the same lists with the second
/// square root negated. `w87`: the well-formed 8W7(q d e^{-i phi}; q e^{i(theta-phi)},
/// q e^{-i(theta+phi)}, q d / c, q, d e^{-i phi}; q, c e^{i phi}).
enum class KernelReading { as_printed, vwp_sign, w87 };

inline constexpr KernelReading kAllKernelReadings[] = {KernelReading::as_printed,
                                                       KernelReading::vwp_sign, KernelReading::w87};

inline std::string to_string(KernelReading r) {
  switch (r) {
    case KernelReading::as_printed: return "as_printed";
    case KernelReading::vwp_sign: return "vwp_sign";
    case KernelReading::w87: return "w87";
  }
  return "unknown";
}

struct KernelValue {
  Complex value;
  std::string warning;  // set for readings that follow a garbled display
};

/// (ac, ad, q c e^{i phi}, q d e^{-i phi}; q)_1 times the ratio of infinite products.
inline Complex kernel_prefactor(double theta, double phi, const AWParams& p, const QContext& ctx) {
  const Complex a = p.a(), b = p.b(), c = p.c(), d = p.d(), q = ctx.q;
  const Complex et = std::polar(1.0, theta), ep = std::polar(1.0, phi);
  const Complex first = qpoch_multi({a * c, a * d, q * c * ep, q * d / ep}, ctx, 1);
  return first * qpoch_ratio_infinite({b * et, b / et, q * d * et, q * d / et, q * a * ep,
                                       q * a / ep, q * c * ep, q * c / ep},
                                      {q * et * ep, q * et / ep, q * ep / et, q / (et * ep)}, ctx);
}

inline SeriesSpec kernel_series_spec(double theta, double phi, const AWParams& p,
                                     KernelReading reading, const QContext& ctx) {
  const Complex c = p.c(), d = p.d(), q = ctx.q;
  const Complex et = std::polar(1.0, theta), ep = std::polar(1.0, phi);
  const Complex lead = q * d / ep;
  const Complex z = c * ep;
  if (reading == KernelReading::w87)
    return vwp_unfold(lead, {q * et / ep, q / (et * ep), q * d / c, q, d / ep}, ctx, z);
  const Complex root = std::sqrt(lead);
  SeriesSpec spec;
  spec.numerator = {lead, q * root, -q * root, q * et / ep, q / (et * ep), q * d / c, q};
  spec.denominator = {root, reading == KernelReading::as_printed ? root : -root,
                      q * d / et, q * d * et, q * q, q * c / ep, lead};
  spec.z = z;
  return spec;
}

/// The kernel in angle variables, x = cos theta and y = cos phi.
inline KernelValue kernel_L_theta(double theta, double phi, const AWParams& p, const QContext& ctx,
                                  KernelReading reading = KernelReading::w87) {
  const SeriesValue s = eval_phi(kernel_series_spec(theta, phi, p, reading, ctx), ctx);
  KernelValue kv{kernel_prefactor(theta, phi, p, ctx) * s.value, {}};
  if (reading != KernelReading::w87) kv.warning = "series read from a garbled display";
  return kv;
}

/// L(x, y) with x = cos theta, y = cos phi.
inline KernelValue kernel_L(double x, double y, const AWParams& p, const QContext& ctx,
                            KernelReading reading = KernelReading::w87) {
  if (!(std::abs(x) < 1.0) || !(std::abs(y) < 1.0))
    throw NumericError(ErrorKind::parameter_out_of_range, "kernel needs |x|, |y| < 1");
  if (!(std::abs(p.c()) < 1.0))
    throw NumericError(ErrorKind::non_convergent, "kernel series needs |c| < 1");
  const double theta = std::acos(x), phi = std::acos(y);
  return kernel_L_theta(theta, phi, p, ctx, reading);
}

struct InverseResult {
  Complex lhs;  // (q, q^2; q)_inf / (2 pi) * integral of L(x, y) p_n(x) rho(x) dx
  Complex rhs;  // p_n(y; aq, b/q, c, d)
  double residual = 0.0;
  double quadrature_error = 0.0;
};

inline InverseResult apply_inverse(int n, const AWParams& p, double y, const QuadratureSpec& qs,
                                   const QContext& ctx, KernelReading reading = KernelReading::w87) {
  if (!(std::abs(y) < 1.0))
    throw NumericError(ErrorKind::parameter_out_of_range, "inverse needs |y| < 1");
  const double phi = std::acos(y);
  auto integrand = [&](double theta) -> Complex {
    const LatticePoint pt = LatticePoint::from_theta(theta, ctx);
    return kernel_L_theta(theta, phi, p, ctx, reading).value *
           aw_poly(n, p, pt, AWNormalization::phi, ctx) * aw_weight_theta(theta, p, ctx);
  };
  const auto integral = integrate_theta(integrand, qs);
  const Complex norm = qpoch_multi({ctx.q, ctx.q * ctx.q}, ctx, infinity) / (2.0 * std::numbers::pi);

  InverseResult r;
  r.lhs = norm * integral.value;
  const AWParams shifted(p.a() * ctx.q, p.b() / ctx.q, p.c(), p.d());
  r.rhs = aw_poly(n, shifted, LatticePoint::from_theta(phi, ctx), AWNormalization::phi, ctx);
  r.residual = std::abs(r.lhs - r.rhs) / (std::abs(r.lhs) + std::abs(r.rhs) + 1e-30);
  r.quadrature_error = std::abs(norm) * integral.error_estimate;
  return r;
}

}  // namespace awq
