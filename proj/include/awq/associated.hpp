#pragma once

// Associated Askey-Wilson polynomials and the two-variable functions built
// around them.

#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "awq/awpoly.hpp"
#include "awq/errors.hpp"
#include "awq/hyperseries.hpp"
#include "awq/qcore.hpp"

namespace awq {

struct AssocParams {
  AWParams base;
  double alpha = 0.0;

  AssocParams(AWParams p, double alpha_) : base(p), alpha(alpha_) { validate(); }

  void validate() const {
    if (!(alpha >= 0.0 && alpha < 1.0))
      throw NumericError(ErrorKind::parameter_out_of_range, "alpha must lie in [0, 1)");
  }
};

/// `corrected` repairs the misprinted factors; `as_printed` follows the
/// displayed formulas literally.
enum class AssocReading { corrected, as_printed };

struct EigenScalars {
  Complex lambda_alpha_n;
  Complex mu_alpha;
  Complex lambda_lemma3;
  Complex lambda_theorem1;
};

namespace detail {

/// t_0 .. t_count of prod (num;q)_k / prod (den;q)_k z^k in wide precision.
inline std::vector<Wide> poch_terms(std::initializer_list<Complex> num,
                                    std::initializer_list<Complex> den, Complex z, int count,
                                    const QContext& ctx) {
  const Wide qw = to_wide(ctx.q), zw = to_wide(z), one(1);
  std::vector<Wide> nw, dw;
  for (const Complex& a : num) nw.push_back(snap_param(a, qw, ctx));
  for (const Complex& b : den) dw.push_back(snap_param(b, qw, ctx));
  std::vector<Wide> t(static_cast<std::size_t>(count) + 1);
  t[0] = one;
  Wide qk = one;
  for (int k = 0; k < count; ++k) {
    Wide r = zw;
    for (const Wide& a : nw) r *= one - a * qk;
    for (const Wide& b : dw) {
      const Wide f = one - b * qk;
      checked(to_complex(f), "Pochhammer denominator vanishes");
      r /= f;
    }
    t[k + 1] = t[k] * r;
    qk *= qw;
  }
  return t;
}

inline Complex eigen_constant(const QContext& ctx) {
  const Complex one_minus_q = 1.0 - ctx.q;
  return 4.0 * ctx.pow(Complex(1.5)) / (one_minus_q * one_minus_q);
}

/// (q^a, ab q^{a-1}, ac q^{a-1}, ad q^{a-1}; q)_1
inline Complex first_factor(const AssocParams& ap, const QContext& ctx) {
  const AWParams& p = ap.base;
  const Complex qa = ctx.pow(Complex(ap.alpha));
  const Complex qa1 = qa / ctx.q;
  const Complex a = p.a();
  return (1.0 - qa) * (1.0 - a * p.b() * qa1) * (1.0 - a * p.c() * qa1) * (1.0 - a * p.d() * qa1);
}

}  // namespace detail

/// p_n^alpha(x) from the shifted recurrence, started at p_{-1} = 0, p_0 = 1.
inline Complex assoc_by_recurrence(int n, const AssocParams& ap, Complex x, const QContext& ctx,
                                   CoeffReading reading = CoeffReading::standard) {
  if (n < 0) throw NumericError(ErrorKind::parameter_out_of_range, "degree must be >= 0");
  Complex prev{0.0, 0.0}, cur{1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const RecurrenceCoeffs rc = aw_recurrence_coeffs(k + ap.alpha, ap.base, ctx, reading);
    const Complex next = ((2.0 * x - rc.B) * cur - rc.C * prev) / detail::checked(rc.A, "A vanishes");
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Sum over k of a 10W9 with argument a^2; x = (w + 1/w)/2.
inline Complex assoc_ismail_rahman_w(int n, const AssocParams& ap, Complex w, const QContext& ctx,
                                     AssocReading reading = AssocReading::corrected) {
  if (n < 0) throw NumericError(ErrorKind::parameter_out_of_range, "degree must be >= 0");
  const AWParams& p = ap.base;
  const Complex a = p.a(), b = p.b(), c = p.c(), d = p.d(), g = p.gamma();
  const Complex qa = ctx.pow(Complex(ap.alpha));
  const Complex q2a = qa * qa;
  const auto outer = detail::poch_terms(
      {ctx.pow(-n), g * q2a * ctx.pow(n - 1), g * q2a / ctx.q, a * w, a / w},
      {ctx.q, a * b * qa, a * c * qa, a * d * qa, g * qa / ctx.q}, ctx.q, n, ctx);
  const int lead_shift = reading == AssocReading::corrected ? -2 : -1;
  Wide total(0);
  for (int k = 0; k <= n; ++k) {
    const Complex a1 = g * q2a * ctx.pow(k + lead_shift);
    const std::vector<Complex> rest = {qa,
                                       b * c * qa / ctx.q,
                                       b * d * qa / ctx.q,
                                       c * d * qa / ctx.q,
                                       ctx.pow(k + 1),
                                       g * q2a * ctx.pow(n + k - 1),
                                       ctx.pow(k - n)};
    total += outer[k] * eval_W_wide(a1, rest, ctx, a * a);
  }
  return to_complex(total);
}

inline Complex assoc_ismail_rahman(int n, const AssocParams& ap, double theta, const QContext& ctx,
                                   AssocReading reading = AssocReading::corrected) {
  return assoc_ismail_rahman_w(n, ap, std::polar(1.0, theta), ctx, reading);
}

/// Rahman's double sum; x = (w + 1/w)/2.
inline Complex assoc_rahman_double_w(int n, const AssocParams& ap, Complex w, const QContext& ctx,
                                     AssocReading reading = AssocReading::corrected) {
  if (n < 0) throw NumericError(ErrorKind::parameter_out_of_range, "degree must be >= 0");
  const AWParams& p = ap.base;
  const Complex a = p.a(), b = p.b(), c = p.c(), d = p.d(), g = p.gamma();
  const Complex qa = ctx.pow(Complex(ap.alpha));
  const Complex q2a = qa * qa;
  const bool fixed = reading == AssocReading::corrected;

  const Complex pre = qpoch_multi({g * q2a / ctx.q, qa * ctx.q}, ctx, n) /
                      detail::checked(qpoch_multi({ctx.q, g * qa / ctx.q}, ctx, n),
                                      "prefactor denominator vanishes") *
                      std::pow(qa, -n);
  const auto outer = detail::poch_terms(
      {ctx.pow(-n), g * q2a * ctx.pow(n - 1), a * qa * w, a * qa / w},
      {qa * ctx.q, a * b * qa, a * c * qa, (fixed ? a * d : a * c) * qa},
      fixed ? ctx.q : Complex{1.0, 0.0}, n, ctx);
  const auto inner = detail::poch_terms(
      {qa, a * b * qa / ctx.q, a * c * qa / ctx.q, a * d * qa / ctx.q},
      {ctx.q, g * q2a / (ctx.q * ctx.q), a * qa * w, a * qa / w}, ctx.q, n, ctx);

  Wide total(0), partial(0);
  for (int k = 0; k <= n; ++k) {
    partial += inner[k];
    total += outer[k] * partial;
  }
  return pre * to_complex(total);
}

inline Complex assoc_rahman_double(int n, const AssocParams& ap, double theta, const QContext& ctx,
                                   AssocReading reading = AssocReading::corrected) {
  return assoc_rahman_double_w(n, ap, std::polar(1.0, theta), ctx, reading);
}

/// The 8W7 factor of R at index n + alpha.
inline SeriesValue solution_R_series(int n, const AssocParams& ap, Complex z, const QContext& ctx) {
  const AWParams& p = ap.base;
  const Complex b = p.b(), c = p.c(), d = p.d();
  const Complex qnu = ctx.pow(Complex(n + ap.alpha));
  return eval_phi(vwp_unfold(b * c * d / (ctx.q * z),
                             {b / z, c / z, d / z, p.gamma() * qnu / ctx.q, 1.0 / qnu}, ctx,
                             ctx.q * z / p.a()),
                  ctx);
}

/// R_{n+alpha} at x = (z + 1/z)/2.
inline Complex solution_R(int n, const AssocParams& ap, Complex z, const QContext& ctx,
                          AssocReading reading = AssocReading::corrected) {
  const AWParams& p = ap.base;
  const Complex a = p.a(), b = p.b(), c = p.c(), d = p.d();
  const double nu = n + ap.alpha;
  const Complex qnu = ctx.pow(Complex(nu));
  const Complex last = reading == AssocReading::corrected ? a * z * qnu : a * z * d * qnu;
  const Complex pre =
      qpoch_ratio_infinite({a * b * qnu, a * c * qnu, a * d * qnu, b * c * d * qnu / z},
                           {b * c * qnu, b * d * qnu, c * d * qnu, last}, ctx) *
      std::exp(nu * std::log(a / z));
  return pre * solution_R_series(n, ap, z, ctx).value;
}

/// S_{n+alpha} at x = (z + 1/z)/2.
inline Complex solution_S(int n, const AssocParams& ap, Complex z, const QContext& ctx,
                          AssocReading reading = AssocReading::corrected) {
  const AWParams& p = ap.base;
  const Complex a = p.a(), b = p.b(), c = p.c(), d = p.d();
  const double nu = n + ap.alpha;
  const Complex qnu = ctx.pow(Complex(nu));
  const Complex q2nu = qnu * qnu;
  const Complex bcdz = b * c * d * z;
  const Complex tail = reading == AssocReading::corrected ? bcdz * qnu : bcdz * qnu * ctx.q;
  const Complex pre =
      qpoch_ratio_infinite({p.gamma() * q2nu, b * z * qnu * ctx.q, c * z * qnu * ctx.q,
                            d * z * qnu * ctx.q, tail},
                           {b * c * qnu, b * d * qnu, c * d * qnu, qnu * ctx.q, bcdz * q2nu * ctx.q},
                           ctx) *
      std::exp(nu * std::log(a * z));
  const SeriesValue w = eval_W(bcdz * q2nu, {b * c * qnu, b * d * qnu, c * d * qnu, qnu * ctx.q, z * ctx.q / a},
                               ctx, a * z);
  return pre * w.value;
}

/// u_n^alpha(x, y) with x = x(s), y = x(z) given as lattice points.
inline Complex u_fn(int n, const AssocParams& ap, const LatticePoint& xs, const LatticePoint& yz,
                    const QContext& ctx) {
  if (n < 0) throw NumericError(ErrorKind::parameter_out_of_range, "degree must be >= 0");
  const AWParams& p = ap.base;
  const Complex a = p.a(), b = p.b(), c = p.c(), d = p.d(), g = p.gamma();
  const Complex qa = ctx.pow(Complex(ap.alpha));
  const Complex ws = xs.w, wz = yz.w;
  const Complex pre = qpoch_ratio_infinite({a * ws, a / ws, a * qa * wz, a * qa / wz},
                                           {a * qa * ws, a * qa / ws, a * wz, a / wz}, ctx);
  const auto outer = detail::poch_terms({ctx.pow(-n), g * qa * qa * ctx.pow(n - 1), a * qa * ws, a * qa / ws},
                                        {qa * ctx.q, a * b * qa, a * c * qa, a * d * qa}, ctx.q, n, ctx);
  const auto inner = detail::poch_terms(
      {qa, a * b * qa / ctx.q, a * c * qa / ctx.q, a * d * qa / ctx.q},
      {ctx.q, g * qa * qa / (ctx.q * ctx.q), a * qa * wz, a * qa / wz}, ctx.q, n, ctx);
  Wide total(0), partial(0);
  for (int m = 0; m <= n; ++m) {
    partial += inner[m];
    total += outer[m] * partial;
  }
  return pre * to_complex(total);
}

inline Complex u_fn(int n, const AssocParams& ap, Complex s, Complex z, const QContext& ctx) {
  return u_fn(n, ap, LatticePoint::from_s(s, ctx), LatticePoint::from_s(z, ctx), ctx);
}

/// Parameter set of the polynomial inside f_n^alpha.
inline AWParams f_poly_params(const AssocParams& ap, Complex wz, const QContext& ctx) {
  const AWParams& p = ap.base;
  const Complex qa1 = ctx.pow(Complex(ap.alpha)) / ctx.q;
  return {p.a() * qa1, p.b() * p.c() * p.d() * qa1, ctx.q * wz, ctx.q / wz};
}

/// Parameter set of the polynomial inside g_n^alpha.
inline AWParams g_poly_params(const AssocParams& ap, Complex wz, const QContext& ctx) {
  const AWParams& p = ap.base;
  const Complex qa = ctx.pow(Complex(ap.alpha));
  return {p.a() * qa, p.b() * p.c() * p.d() * qa / (ctx.q * ctx.q), ctx.q * wz, ctx.q / wz};
}

inline Complex f_fn(int n, const AssocParams& ap, const LatticePoint& xs, const LatticePoint& yz,
                    const QContext& ctx) {
  const Complex a = ap.base.a();
  const Complex qa = ctx.pow(Complex(ap.alpha));
  const Complex qa1 = qa / ctx.q;
  const Complex ws = xs.w, wz = yz.w;
  const Complex one_minus_q = 1.0 - ctx.q;
  const Complex lead = -4.0 * ctx.pow(Complex(1.5 - ap.alpha)) / (one_minus_q * one_minus_q);
  const Complex ratio = qpoch_ratio_infinite({a * ws, a / ws, a * qa * wz, a * qa / wz},
                                             {a * qa1 * ws, a * qa1 / ws, a * wz, a / wz}, ctx);
  return lead * ratio * detail::first_factor(ap, ctx) *
         aw_poly(n, f_poly_params(ap, wz, ctx), xs, AWNormalization::phi, ctx);
}

inline Complex f_fn(int n, const AssocParams& ap, Complex s, Complex z, const QContext& ctx) {
  return f_fn(n, ap, LatticePoint::from_s(s, ctx), LatticePoint::from_s(z, ctx), ctx);
}

inline Complex g_fn(int n, const AssocParams& ap, const LatticePoint& xs, const LatticePoint& yz,
                    const QContext& ctx) {
  const Complex a = ap.base.a();
  const Complex qa = ctx.pow(Complex(ap.alpha));
  const Complex ws = xs.w, wz = yz.w;
  const Complex one_minus_q = 1.0 - ctx.q;
  const Complex lead = -4.0 * ctx.pow(Complex(4.5 - ap.alpha)) /
                       (one_minus_q * one_minus_q * ap.base.gamma());
  const Complex ratio =
      qpoch_ratio_infinite({a * ws, a / ws, a * qa * ctx.q * wz, a * qa * ctx.q / wz},
                           {a * qa * ws, a * qa / ws, a * wz, a / wz}, ctx);
  return lead * ratio * detail::first_factor(ap, ctx) *
         aw_poly(n, g_poly_params(ap, wz, ctx), xs, AWNormalization::phi, ctx);
}

inline Complex g_fn(int n, const AssocParams& ap, Complex s, Complex z, const QContext& ctx) {
  return g_fn(n, ap, LatticePoint::from_s(s, ctx), LatticePoint::from_s(z, ctx), ctx);
}

/// lambda_nu = K (1 - q^{-nu})(1 - g q^{nu-1}) for arbitrary real nu.
inline Complex lambda_nu(double nu, const AWParams& p, const QContext& ctx) {
  return detail::eigen_constant(ctx) * (1.0 - ctx.pow(Complex(-nu))) *
         (1.0 - p.gamma() * ctx.pow(Complex(nu - 1.0)));
}

inline EigenScalars eigen_scalars(int n, const AssocParams& ap, Complex z, const QContext& ctx) {
  const AWParams& p = ap.base;
  const Complex K = detail::eigen_constant(ctx);
  const Complex g = p.gamma();
  const double nu = n + ap.alpha;
  const Complex qa = ctx.pow(Complex(ap.alpha));
  const Complex wz = ctx.pow(z);
  EigenScalars e;
  e.lambda_alpha_n = lambda_nu(nu, p, ctx);
  e.mu_alpha = K * (1.0 - qa) * (1.0 - ctx.pow(Complex(3.0 - ap.alpha)) / g);
  e.lambda_lemma3 = K * (1.0 - p.a() * p.c() / ctx.q) * (1.0 - p.a() * p.d() / ctx.q);
  e.lambda_theorem1 = K * (1.0 - p.a() * qa / wz) * (1.0 - p.a() * qa * wz);
  return e;
}

}  // namespace awq
