#pragma once

// Basic hypergeometric series: unilateral r-phi-s, bilateral r-psi-s and the
// very-well-poised W shorthand.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "awq/errors.hpp"
#include "awq/qcore.hpp"

namespace awq {

struct SeriesSpec {
  std::vector<Complex> numerator;
  std::vector<Complex> denominator;
  Complex z{0.0, 0.0};
  bool bilateral = false;
};

struct SeriesValue {
  Complex value;
  int terms_used = 0;
  double tail_estimate = 0.0;  // relative geometric-tail estimate; 0 for terminating sums
};

namespace detail {

inline constexpr double kTerminationTol = 1e-12;
inline constexpr int kSmallTermsToStop = 3;

}  // namespace detail

/// m >= 0 with p == q^{-m} to within 1e-12 relative, if any.
inline std::optional<int> q_power_index(Complex p, const QContext& ctx) {
  if (p == Complex{}) return std::nullopt;
  const double m = -std::log(std::abs(p)) / std::log(std::abs(ctx.q));
  if (!std::isfinite(m)) return std::nullopt;
  const double rounded = std::round(m);
  if (rounded < 0.0 || rounded > ctx.max_terms) return std::nullopt;
  const int mi = static_cast<int>(rounded);
  const Complex target = ctx.pow(-mi);
  if (!std::isfinite(std::abs(target))) return std::nullopt;
  if (std::abs(p - target) < detail::kTerminationTol * std::abs(target)) return mi;
  return std::nullopt;
}

/// Index of the last nonzero term when some numerator parameter is q^{-m}.
inline std::optional<int> terminating_index(const std::vector<Complex>& numerator,
                                            const QContext& ctx) {
  std::optional<int> best;
  for (const Complex& a : numerator) {
    if (auto m = q_power_index(a, ctx); m && (!best || *m < *best)) best = m;
  }
  return best;
}

namespace detail {

// Sums t_0 + t_1 + ... where t_{k+1} = t_k * ratio(k). `last` bounds the
// index for terminating sums. Applies the 3-small-terms rule plus a geometric
// tail estimate otherwise.
template <class Ratio>
SeriesValue sum_one_side(Ratio&& ratio, Complex first, std::optional<int> last,
                         const QContext& ctx, const char* what) {
  Complex sum = first;
  Complex term = first;
  double largest = std::abs(first);
  int used = 1;
  int small_run = 0;
  for (int k = 0;; ++k) {
    if (last && k >= *last) return {sum, used, 0.0};
    if (k >= ctx.max_terms)
      throw NumericError(ErrorKind::budget_exceeded, std::string(what) + " exceeded max_terms");
    const Complex r = ratio(k);
    const Complex next = term * r;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag()))
      throw NumericError(ErrorKind::non_convergent, std::string(what) + " terms overflow");
    sum += next;
    ++used;
    largest = std::max(largest, std::abs(next));
    term = next;
    if (last) continue;
    const double scale = std::max(std::abs(sum), std::numeric_limits<double>::epsilon() * largest);
    if (scale == 0.0) {
      // every term so far vanished; a zero term stays zero under the ratio recursion
      if (term == Complex{}) return {sum, used, 0.0};
      continue;
    }
    if (std::abs(next) < ctx.trunc_eps * scale) {
      ++small_run;
    } else {
      small_run = 0;
    }
    if (small_run >= kSmallTermsToStop) {
      const double rho = std::abs(r);
      const double tail = rho < 1.0 ? std::abs(next) * rho / (1.0 - rho) / scale
                                    : std::numeric_limits<double>::infinity();
      if (tail <= ctx.trunc_eps || term == Complex{}) return {sum, used, term == Complex{} ? 0.0 : tail};
    }
  }
}

inline Complex sign_power(Complex qn, int e) {
  // ((-1) q^n)^e for integer e
  return e == 0 ? Complex{1.0, 0.0} : std::pow(-qn, e);
}

}  // namespace detail

namespace detail {

/// The parameter in wide precision, replaced by the exact power when it matches q^{-m}.
inline Wide snap_param(Complex p, const Wide& qw, const QContext& ctx) {
  if (auto m = q_power_index(p, ctx)) return wide_pow(qw, -*m);
  return to_wide(p);
}

inline void check_phi(const SeriesSpec& spec, std::optional<int> last, const QContext& ctx) {
  const std::size_t r = spec.numerator.size(), s = spec.denominator.size();
  for (const Complex& b : spec.denominator) {
    // (b;q)_k vanishes for k >= m+1 when b = q^{-m}
    if (auto m = q_power_index(b, ctx); m && (!last || *last > *m))
      throw NumericError(ErrorKind::denominator_pole,
                         "denominator parameter q^-" + std::to_string(*m) + " before termination");
  }
  if (!last) {
    if (r > s + 1)
      throw NumericError(ErrorKind::non_convergent, "non-terminating series with r > s+1");
    if (r == s + 1 && std::abs(spec.z) >= 1.0)
      throw NumericError(ErrorKind::non_convergent, "r = s+1 requires |z| < 1");
  }
}

/// Terminating phi summed term by term in wide precision.
inline Wide sum_terminating_wide(const SeriesSpec& spec, int last, const QContext& ctx) {
  const int extra = 1 + static_cast<int>(spec.denominator.size()) - static_cast<int>(spec.numerator.size());
  const Wide qw = to_wide(ctx.q), z = to_wide(spec.z), one(1);
  std::vector<Wide> num, den;
  for (const Complex& a : spec.numerator) num.push_back(snap_param(a, qw, ctx));
  for (const Complex& b : spec.denominator) den.push_back(snap_param(b, qw, ctx));
  Wide sum(1), term(1), qk(1);
  double largest = 1.0;
  for (int k = 0; k < last; ++k) {
    Wide ratio = z * wide_pow(-qk, extra);
    for (const Wide& a : num) ratio *= one - a * qk;
    Wide d = one - qk * qw;
    for (const Wide& b : den) d *= one - b * qk;
    if (d == Wide(0)) throw NumericError(ErrorKind::denominator_pole, "phi denominator vanishes");
    term *= ratio / d;
    sum += term;
    largest = std::max(largest, static_cast<double>(abs(term)));
    qk *= qw;
  }
  // digits lost to cancellation must leave a double's worth intact
  const double lost = std::log10(largest) - std::log10(static_cast<double>(abs(sum)));
  if (!(lost < kWideDigits - 20))
    throw NumericError(ErrorKind::non_convergent, "terminating sum cancels beyond working precision");
  return sum;
}

}  // namespace detail

/// r-phi-s with the extra factor ((-1)^n q^{n(n-1)/2})^{1+s-r}.
///
/// Terminating series are summed in wide precision: with a q^{-n} parameter
/// the terms grow like q^{-n(n-1)/2} while the sum stays O(1).
inline SeriesValue eval_phi(const SeriesSpec& spec, const QContext& ctx) {
  ctx.validate();
  const int r = static_cast<int>(spec.numerator.size());
  const int s = static_cast<int>(spec.denominator.size());
  const auto last = terminating_index(spec.numerator, ctx);
  detail::check_phi(spec, last, ctx);
  if (last) {
    const Complex v = to_complex(detail::sum_terminating_wide(spec, *last, ctx));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericError(ErrorKind::non_convergent, "phi series terms overflow");
    return {v, *last + 1, 0.0};
  }

  const int extra = 1 + s - r;
  auto ratio = [&](int k) {
    const Complex qk = ctx.pow(k);
    Complex num = spec.z * detail::sign_power(qk, extra);
    for (const Complex& a : spec.numerator) num *= 1.0 - a * qk;
    Complex den = 1.0 - qk * ctx.q;
    for (const Complex& b : spec.denominator) den *= 1.0 - b * qk;
    return num / den;
  };
  return detail::sum_one_side(ratio, Complex{1.0, 0.0}, last, ctx, "phi series");
}

/// eval_phi keeping the wide-precision value of terminating sums.
inline Wide eval_phi_wide(const SeriesSpec& spec, const QContext& ctx) {
  ctx.validate();
  const auto last = terminating_index(spec.numerator, ctx);
  detail::check_phi(spec, last, ctx);
  if (last) return detail::sum_terminating_wide(spec, *last, ctx);
  return to_wide(eval_phi(spec, ctx).value);
}

/// Bilateral r-psi-s: sum over all integers k of
/// (a;q)_k / (b;q)_k ((-1)^k q^{k(k-1)/2})^{s-r} z^k.
inline SeriesValue eval_psi(const SeriesSpec& spec, const QContext& ctx) {
  ctx.validate();
  const int r = static_cast<int>(spec.numerator.size());
  const int s = static_cast<int>(spec.denominator.size());
  const int extra = s - r;

  // positive side
  const auto last_pos = terminating_index(spec.numerator, ctx);
  for (const Complex& b : spec.denominator) {
    if (auto m = q_power_index(b, ctx); m && (!last_pos || *last_pos > *m))
      throw NumericError(ErrorKind::denominator_pole, "psi: positive-side pole");
  }
  auto up = [&](int k) {
    const Complex qk = ctx.pow(k);
    Complex num = spec.z * detail::sign_power(qk, extra);
    for (const Complex& a : spec.numerator) num *= 1.0 - a * qk;
    Complex den{1.0, 0.0};
    for (const Complex& b : spec.denominator) den *= 1.0 - b * qk;
    return num / den;
  };
  SeriesValue pos = detail::sum_one_side(up, Complex{1.0, 0.0}, last_pos, ctx, "psi positive side");

  // negative side: T_{n-1} = T_n prod(1 - b q^{n-1}) / (prod(1 - a q^{n-1}) (-q^{n-1})^{s-r} z)
  std::optional<int> last_neg;  // number of nonzero negative-index terms
  for (const Complex& b : spec.denominator) {
    if (b == Complex{}) continue;
    if (auto m = q_power_index(1.0 / b, ctx); m && *m >= 1) {
      const int count = *m - 1;
      if (!last_neg || count < *last_neg) last_neg = count;
    }
  }
  for (const Complex& a : spec.numerator) {
    if (a == Complex{}) continue;
    if (auto m = q_power_index(1.0 / a, ctx); m && *m >= 1 && (!last_neg || *last_neg >= *m))
      throw NumericError(ErrorKind::denominator_pole, "psi: negative-side pole");
  }
  if (last_neg && *last_neg == 0) return pos;
  if (spec.z == Complex{})
    throw NumericError(ErrorKind::non_convergent, "psi: z = 0 with a non-vanishing negative side");
  if (!last_neg) {
    Complex pa{1.0, 0.0}, pb{1.0, 0.0};
    for (const Complex& a : spec.numerator) pa *= a;
    for (const Complex& b : spec.denominator) pb *= b;
    if (pa == Complex{} || std::abs(pb) >= std::abs(pa * spec.z))
      throw NumericError(ErrorKind::non_convergent, "psi: negative side does not decay");
  }
  auto down = [&](int j) {
    // from index -j to -(j+1); n = -j, q^{n-1} = q^{-j-1}
    const Complex qn1 = ctx.pow(-j - 1);
    Complex num{1.0, 0.0};
    for (const Complex& b : spec.denominator) num *= 1.0 - b * qn1;
    Complex den = spec.z * detail::sign_power(qn1, extra);
    for (const Complex& a : spec.numerator) den *= 1.0 - a * qn1;
    return num / den;
  };
  const Complex t_minus1 = down(0);
  SeriesValue neg = detail::sum_one_side(
      [&](int j) { return down(j + 1); }, t_minus1,
      last_neg ? std::optional<int>(*last_neg - 1) : std::nullopt, ctx, "psi negative side");
  return {pos.value + neg.value, pos.terms_used + neg.terms_used,
          std::max(pos.tail_estimate, neg.tail_estimate)};
}

/// Unfolds W(a1; rest; q, z) into the very-well-poised phi:
/// numerator a1, q sqrt(a1), -q sqrt(a1), rest...; denominator sqrt(a1), -sqrt(a1), q a1 / rest_i...
inline SeriesSpec vwp_unfold(Complex a1, const std::vector<Complex>& rest, const QContext& ctx,
                             Complex z, int sqrt_sign = +1) {
  const Complex root = static_cast<double>(sqrt_sign) * std::sqrt(a1);
  SeriesSpec spec;
  spec.numerator = {a1, ctx.q * root, -ctx.q * root};
  spec.numerator.insert(spec.numerator.end(), rest.begin(), rest.end());
  spec.denominator = {root, -root};
  for (const Complex& r : rest) {
    if (r == Complex{})
      throw NumericError(ErrorKind::parameter_out_of_range, "very-well-poised parameter is zero");
    spec.denominator.push_back(ctx.q * a1 / r);
  }
  spec.z = z;
  return spec;
}

/// The (r+1)W(r) series with the given r-3 free parameters.
inline SeriesValue eval_W(Complex a1, const std::vector<Complex>& rest, const QContext& ctx,
                          Complex z) {
  return eval_phi(vwp_unfold(a1, rest, ctx, z), ctx);
}

inline Wide eval_W_wide(Complex a1, const std::vector<Complex>& rest, const QContext& ctx, Complex z) {
  return eval_phi_wide(vwp_unfold(a1, rest, ctx, z), ctx);
}

}  // namespace awq
