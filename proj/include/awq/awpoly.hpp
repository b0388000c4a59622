#pragma once

// Askey-Wilson polynomials: the 4phi3 representation in two normalizations,
// the three-term recurrence with real index, and the orthogonality weight.

#include <cmath>
#include <complex>

#include "awq/errors.hpp"
#include "awq/hyperseries.hpp"
#include "awq/qcore.hpp"

namespace awq {

struct RecurrenceCoeffs {
  Complex A, B, C;
  double nu = 0.0;
};

/// Which printed form of the recurrence denominators to use.
///
/// `standard`: A has (1 - g q^{2v-1})(1 - g q^{2v}), C has (1 - g q^{2v-2})(1 - g q^{2v-1}).
/// `as_printed`: A has (1 - g q^{2v-1})(1 - g q^{2v} - q^{2v}), C has (1 - g q^{2v-1})(1 - g q^{2v}).
enum class CoeffReading { standard, as_printed };

/// `phi` is the bare 4phi3; `full` carries the a^{-n}(ab,ac,ad;q)_n prefactor.
enum class AWNormalization { phi, full };

namespace detail {

inline constexpr double kDenominatorFloor = 1e-12;

inline Complex checked(Complex den, const char* what) {
  if (std::abs(den) <= kDenominatorFloor)
    throw NumericError(ErrorKind::degenerate_denominator, what);
  return den;
}

}  // namespace detail

inline RecurrenceCoeffs aw_recurrence_coeffs(double nu, const AWParams& p, const QContext& ctx,
                                             CoeffReading reading = CoeffReading::standard) {
  ctx.validate();
  const Complex a = p.a(), b = p.b(), c = p.c(), d = p.d(), g = p.gamma();
  if (a == Complex{}) throw NumericError(ErrorKind::degenerate_denominator, "recurrence needs a != 0");
  const Complex qv = ctx.pow(Complex(nu));
  const Complex qv1 = qv / ctx.q;  // q^{v-1}
  const Complex g2m2 = g * qv1 * qv1;
  const Complex g2m1 = g * qv * qv1;
  const Complex g2 = g * qv * qv;

  Complex a_den = (1.0 - g2m1);
  Complex c_den;
  if (reading == CoeffReading::standard) {
    a_den *= 1.0 - g2;
    c_den = (1.0 - g2m2) * (1.0 - g2m1);
  } else {
    a_den *= 1.0 - g2 - qv * qv;
    c_den = (1.0 - g2m1) * (1.0 - g2);
  }
  detail::checked(a_den, "A denominator vanishes");
  detail::checked(c_den, "C denominator vanishes");

  RecurrenceCoeffs rc;
  rc.nu = nu;
  rc.A = (1.0 - a * b * qv) * (1.0 - a * c * qv) * (1.0 - a * d * qv) * (1.0 - g * qv1) / (a * a_den);
  rc.C = a * (1.0 - qv) * (1.0 - b * c * qv1) * (1.0 - b * d * qv1) * (1.0 - c * d * qv1) / c_den;
  rc.B = a + 1.0 / a - rc.A - rc.C;
  return rc;
}

/// The terminating 4phi3(q^{-n}, g q^{n-1}, a w, a/w; ab, ac, ad; q, q) spec at w = q^s.
inline SeriesSpec aw_series_spec(int n, const AWParams& p, Complex w, const QContext& ctx) {
  const Complex a = p.a();
  SeriesSpec spec;
  spec.numerator = {ctx.pow(-n), p.gamma() * ctx.pow(n - 1), a * w, a / w};
  spec.denominator = {a * p.b(), a * p.c(), a * p.d()};
  spec.z = ctx.q;
  return spec;
}

inline Complex aw_full_prefactor(int n, const AWParams& p, const QContext& ctx) {
  const Complex a = p.a();
  return std::pow(a, -n) * qpoch_multi({a * p.b(), a * p.c(), a * p.d()}, ctx, n);
}

inline Complex aw_poly(int n, const AWParams& p, const LatticePoint& pt,
                       AWNormalization norm, const QContext& ctx) {
  if (n < 0) throw NumericError(ErrorKind::parameter_out_of_range, "polynomial degree must be >= 0");
  if (n == 0) return norm == AWNormalization::phi ? Complex{1.0, 0.0} : aw_full_prefactor(0, p, ctx);
  const Complex v = eval_phi(aw_series_spec(n, p, pt.w, ctx), ctx).value;
  return norm == AWNormalization::phi ? v : aw_full_prefactor(n, p, ctx) * v;
}

inline Complex aw_poly(int n, const AWParams& p, Complex s, AWNormalization norm,
                       const QContext& ctx) {
  return aw_poly(n, p, LatticePoint::from_s(s, ctx), norm, ctx);
}

/// Phi-normalized polynomial from the recurrence, started at p_{-1} = 0, p_0 = 1.
inline Complex aw_poly_by_recurrence(int n, const AWParams& p, Complex x, const QContext& ctx,
                                     CoeffReading reading = CoeffReading::standard) {
  if (n < 0) throw NumericError(ErrorKind::parameter_out_of_range, "polynomial degree must be >= 0");
  Complex prev{0.0, 0.0}, cur{1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const RecurrenceCoeffs rc = aw_recurrence_coeffs(k, p, ctx, reading);
    const Complex next = ((2.0 * x - rc.B) * cur - rc.C * prev) / detail::checked(rc.A, "A vanishes");
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace detail {

inline void require_weight_regime(const AWParams& p) {
  for (Complex u : {p.a(), p.b(), p.c(), p.d()}) {
    if (u.imag() != 0.0 || !(std::abs(u) < 1.0))
      throw NumericError(ErrorKind::parameter_out_of_range,
                         "weight needs real parameters with modulus below 1");
  }
}

}  // namespace detail

/// The weight in the theta variable: w(cos t) sin t = |(e^{2it};q)_inf|^2 / prod_u |(u e^{it};q)_inf|^2.
inline double aw_weight_theta(double theta, const AWParams& p, const QContext& ctx) {
  detail::require_weight_regime(p);
  const Complex e = std::polar(1.0, theta);
  double den = 1.0;
  for (Complex u : {p.a(), p.b(), p.c(), p.d()}) den *= std::norm(qpoch_infinite(u * e, ctx));
  return std::norm(qpoch_infinite(e * e, ctx)) / den;
}

inline double aw_weight(double x, const AWParams& p, const QContext& ctx) {
  if (!(std::abs(x) < 1.0))
    throw NumericError(ErrorKind::parameter_out_of_range, "weight needs |x| < 1");
  const double theta = std::acos(x);
  return aw_weight_theta(theta, p, ctx) / std::sqrt(1.0 - x * x);
}

}  // namespace awq
