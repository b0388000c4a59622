#pragma once

// Scalar building blocks: q-shifted factorials, the q-quadratic lattice and
// integer-order generalized powers.

#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "awq/errors.hpp"

namespace awq {

using Complex = std::complex<double>;

/// 100-digit complex used where terminating sums cancel catastrophically.
using Wide = boost::multiprecision::cpp_complex_100;

/// Decimal digits carried by Wide.
inline constexpr int kWideDigits = 100;

inline Wide to_wide(Complex z) { return Wide(z.real(), z.imag()); }

inline Complex to_complex(const Wide& w) {
  return {static_cast<double>(w.real()), static_cast<double>(w.imag())};
}

/// base^k for integer k by repeated multiplication.
inline Wide wide_pow(const Wide& base, int k) {
  Wide r(1);
  for (int j = 0; j < std::abs(k); ++j) r *= base;
  return k < 0 ? Wide(1) / r : r;
}

/// Base q plus the truncation policy shared by every product and series.
struct QContext {
  Complex q{0.3, 0.0};
  double trunc_eps = 1e-16;  // absolute cutoff |a q^N| for infinite products; relative for series
  int max_terms = 10000;

  QContext() = default;
  explicit QContext(Complex q_, double eps = 1e-16, int budget = 10000)
      : q(q_), trunc_eps(eps), max_terms(budget) {
    validate();
  }

  void validate() const {
    const double mod = std::abs(q);
    if (!(mod > 0.0 && mod < 1.0))
      throw NumericError(ErrorKind::invalid_context, "base must satisfy 0 < |q| < 1");
    if (!(trunc_eps > 0.0))
      throw NumericError(ErrorKind::invalid_context, "trunc_eps must be positive");
    if (max_terms < 1)
      throw NumericError(ErrorKind::invalid_context, "max_terms must be at least 1");
  }

  /// q^s on the principal branch of log q.
  Complex pow(Complex s) const { return std::exp(s * std::log(q)); }
  Complex pow(int n) const { return std::pow(q, n); }
};

/// The Askey-Wilson parameter quadruple with its product gamma = abcd.
class AWParams {
 public:
  AWParams(Complex a, Complex b, Complex c, Complex d)
      : a_(a), b_(b), c_(c), d_(d), gamma_(a * b * c * d) {}

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex gamma() const { return gamma_; }

  AWParams swapped_ab() const { return {b_, a_, c_, d_}; }

 private:
  Complex a_, b_, c_, d_;
  Complex gamma_;
};

/// A point of the q-quadratic lattice x(s) = (q^s + q^-s)/2.
///
/// The point is carried by w = q^s so the s-parametrization and the
/// theta-parametrization (w = e^{i theta}, x = cos theta) share one code path.
struct LatticePoint {
  Complex s;
  Complex w;
  Complex x;

  static LatticePoint from_s(Complex s, const QContext& ctx) {
    const Complex w = ctx.pow(s);
    return {s, w, 0.5 * (w + 1.0 / w)};
  }

  static LatticePoint from_theta(double theta, const QContext& ctx) {
    const Complex w = std::polar(1.0, theta);
    return {Complex(0.0, theta) / std::log(ctx.q), w, Complex(std::cos(theta), 0.0)};
  }

  /// Point with w given directly; s is recovered on the principal branch.
  static LatticePoint from_w(Complex w, const QContext& ctx) {
    return {std::log(w) / std::log(ctx.q), w, 0.5 * (w + 1.0 / w)};
  }
};

/// (a;q)_n for n >= 0.
inline Complex qpoch_finite(Complex a, const QContext& ctx, int n) {
  Complex prod{1.0, 0.0};
  Complex aqj = a;
  for (int j = 0; j < n; ++j) {
    prod *= 1.0 - aqj;
    aqj *= ctx.q;
  }
  return prod;
}

/// (a;q)_k for any integer k, using (a;q)_{-m} = 1/(a q^{-m};q)_m.
inline Complex qpoch_signed(Complex a, const QContext& ctx, int k) {
  if (k >= 0) return qpoch_finite(a, ctx, k);
  const Complex den = qpoch_finite(a * ctx.pow(k), ctx, -k);
  if (std::abs(den) == 0.0)
    throw NumericError(ErrorKind::denominator_pole, "(a;q)_k with negative k hits a zero factor");
  return 1.0 / den;
}

/// (a;q)_inf truncated at the first N with |a q^N| < trunc_eps.
///
/// The neglected tail prod_{j>=N}(1 - a q^j) differs from 1 by at most
/// |a q^N| / (1 - |q|) to first order, so the relative truncation error is
/// bounded by trunc_eps / (1 - |q|).
inline Complex qpoch_infinite(Complex a, const QContext& ctx) {
  Complex prod{1.0, 0.0};
  Complex aqj = a;
  for (int j = 0; std::abs(aqj) >= ctx.trunc_eps; ++j) {
    if (j >= ctx.max_terms)
      throw NumericError(ErrorKind::budget_exceeded, "infinite q-product exceeded max_terms");
    prod *= 1.0 - aqj;
    aqj *= ctx.q;
  }
  return prod;
}

/// Number of factors qpoch_infinite multiplies for the given a.
inline int qpoch_infinite_factor_count(Complex a, const QContext& ctx) {
  int n = 0;
  for (Complex aqj = a; std::abs(aqj) >= ctx.trunc_eps && n <= ctx.max_terms; aqj *= ctx.q) ++n;
  return n;
}

struct infinity_t {};
inline constexpr infinity_t infinity{};

inline Complex qpoch_multi(std::span<const Complex> as, const QContext& ctx, int n) {
  if (as.empty())
    throw NumericError(ErrorKind::parameter_out_of_range, "qpoch_multi needs at least one parameter");
  Complex prod{1.0, 0.0};
  for (const Complex& a : as) prod *= qpoch_finite(a, ctx, n);
  return prod;
}

inline Complex qpoch_multi(std::span<const Complex> as, const QContext& ctx, infinity_t) {
  if (as.empty())
    throw NumericError(ErrorKind::parameter_out_of_range, "qpoch_multi needs at least one parameter");
  Complex prod{1.0, 0.0};
  for (const Complex& a : as) prod *= qpoch_infinite(a, ctx);
  return prod;
}

inline Complex qpoch_multi(std::initializer_list<Complex> as, const QContext& ctx, int n) {
  return qpoch_multi(std::span<const Complex>(as.begin(), as.size()), ctx, n);
}

inline Complex qpoch_multi(std::initializer_list<Complex> as, const QContext& ctx, infinity_t) {
  return qpoch_multi(std::span<const Complex>(as.begin(), as.size()), ctx, infinity);
}

/// Ratio of infinite products prod(num)/prod(den).
inline Complex qpoch_ratio_infinite(std::initializer_list<Complex> num,
                                    std::initializer_list<Complex> den, const QContext& ctx) {
  Complex r{1.0, 0.0};
  for (const Complex& a : num) r *= qpoch_infinite(a, ctx);
  for (const Complex& b : den) r /= qpoch_infinite(b, ctx);
  return r;
}

/// x_{h/2}(s) = (q^{s+h/2} + q^{-s-h/2}) / 2; h = 0 gives x(s), h = 1 gives x_1(s).
inline Complex lattice_x(Complex s, const QContext& ctx, int half_shift = 0) {
  const Complex w = ctx.pow(s + 0.5 * half_shift);
  return 0.5 * (w + 1.0 / w);
}

/// [x(s) - x(z)]^{(m)} for integer m >= 0, from [.]^{(0)} = 1 and
/// [x(s)-x(z)]^{(n+1)} = [x(s)-x(z)] [x(s)-x(z-1)]^{(n)}.
inline Complex generalized_power(Complex s, Complex z, int m, const QContext& ctx) {
  if (m < 0)
    throw NumericError(ErrorKind::parameter_out_of_range, "generalized power needs m >= 0");
  if (m == 0) return {1.0, 0.0};
  return (lattice_x(s, ctx) - lattice_x(z, ctx)) * generalized_power(s, z - 1.0, m - 1, ctx);
}

}  // namespace awq
