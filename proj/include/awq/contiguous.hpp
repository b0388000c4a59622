#pragma once

// Four-term contiguous relations between 4phi3 / r-psi-s series whose
// parameters differ by powers of q.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "awq/errors.hpp"
#include "awq/hyperseries.hpp"
#include "awq/qcore.hpp"
#include "awq/report.hpp"

namespace awq {

/// Shifted pair (C, D) over (G, H), plus the untouched parameters and argument.
struct ContigParams {
  Complex C, D, G, H;
  Complex q{0.4, 0.0};
  std::vector<Complex> num_extra;  // A, B, ... (a_1 .. a_i)
  std::vector<Complex> den_extra;  // F, ... (b_0 .. b_k)
  Complex t{0.4, 0.0};
};

struct ContigCoeffs {
  Complex K1, K2, K3, K4{1.0, 0.0};
};

enum class ContigKind { phi4, psi_cd_lower, psi_gh_upper };

namespace detail {

using Quadratic = std::array<Complex, 3>;  // coefficients of K^0, K^1, K^2

inline Quadratic linear_product(Complex scale, Complex r1, Complex r2) {
  // scale (1 - r1 K)(1 - r2 K)
  return {scale, -scale * (r1 + r2), scale * r1 * r2};
}

inline void require_nondegenerate(const ContigParams& p) {
  const Complex q = p.q;
  constexpr double floor = 1e-10;
  for (Complex v : {p.C - p.D, p.C * q - p.D, p.D * q - p.C, p.G - q, p.H - q}) {
    if (std::abs(v) <= floor)
      throw NumericError(ErrorKind::singular_system, "degenerate contiguous parameters");
  }
}

}  // namespace detail

/// Solves the K^0, K^1, K^2 coefficient equations of the termwise identity with K4 = 1.
inline ContigCoeffs solve_coeffs(const ContigParams& p) {
  detail::require_nondegenerate(p);
  const Complex q = p.q, C = p.C, D = p.D, G = p.G, H = p.H;
  const Complex gh = (1.0 - G / q) * (1.0 - H / q);
  const std::array<detail::Quadratic, 4> terms = {
      detail::linear_product((1.0 - C) * (1.0 - D) * gh, C / q, D / q),
      detail::linear_product((1.0 - D / q) * (1.0 - D) * gh, C, C / q),
      detail::linear_product((1.0 - C / q) * (1.0 - C) * gh, D, D / q),
      detail::linear_product((1.0 - C / q) * (1.0 - C) * (1.0 - D / q) * (1.0 - D), G / q, H / q),
  };
  Eigen::Matrix3cd m;
  Eigen::Vector3cd rhs;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = terms[j][i];
    rhs(i) = -terms[3][i];
  }
  const Eigen::PartialPivLU<Eigen::Matrix3cd> lu(m);
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0 || std::abs(lu.determinant()) <= 1e-14 * scale * scale * scale)
    throw NumericError(ErrorKind::singular_system, "coefficient system is singular");
  const Eigen::Vector3cd k = lu.solve(rhs);
  return {k(0), k(1), k(2), Complex{1.0, 0.0}};
}

/// The factored solution with K4 = 1.
inline ContigCoeffs closed_form_coeffs(const ContigParams& p) {
  detail::require_nondegenerate(p);
  const Complex q = p.q, C = p.C, D = p.D, G = p.G, H = p.H;
  const Complex poly = G * H + C * D * q - C * G * q - D * G * q - C * H * q - D * H * q +
                       G * H * q + C * D * q * q;
  ContigCoeffs k;
  k.K1 = (C - q) * (D - q) * poly / ((G - q) * (H - q) * (-D + C * q) * (C - D * q));
  k.K2 = -((C - 1.0) * (D - G) * (D - H) * (C - q) * q) / ((C - D) * (G - q) * (H - q) * (-D + C * q));
  k.K3 = -((D - 1.0) * (C - G) * (C - H) * (D - q) * q) / ((C - D) * (G - q) * (H - q) * (C - D * q));
  k.K4 = 1.0;
  return k;
}

/// Coefficients of the bilateral (c, d)-lowering relation as displayed.
inline ContigCoeffs psi_cd_lower_coeffs(const ContigParams& p) {
  const Complex q = p.q, c = p.C, d = p.D, g = p.G, h = p.H;
  const Complex poly = -g * h - c * d * q + c * g * q + d * g * q + c * h * q + d * h * q -
                       g * h * q - c * d * q * q;
  ContigCoeffs k;
  k.K1 = (c - q) * (d - q) * poly / ((g - q) * (h - q) * (c * q - d) * (d * q - c));
  k.K2 = (c - 1.0) * (d - g) * (d - h) * (c - q) * q / ((d - c) * (g - q) * (h - q) * (c * q - d));
  k.K3 = (d - 1.0) * (c - g) * (c - h) * (d - q) * q / ((c - d) * (g - q) * (h - q) * (d * q - c));
  k.K4 = 1.0;
  return k;
}

/// Coefficients of the bilateral (g, h)-raising relation as displayed.
inline ContigCoeffs psi_gh_upper_coeffs(const ContigParams& p) {
  const Complex q = p.q, c = p.C, d = p.D, g = p.G, h = p.H;
  const Complex poly = -g * h - c * d * q + c * g * q + d * g * q + c * h * q + d * h * q -
                       g * h * q - c * d * q * q;
  const Complex cd1 = (c - 1.0) * (d - 1.0);
  for (Complex v : {cd1, g * q - h, h * q - g, h - g}) {
    if (std::abs(v) <= 1e-10)
      throw NumericError(ErrorKind::singular_system, "degenerate contiguous parameters");
  }
  ContigCoeffs k;
  k.K1 = (g - 1.0) * (h - 1.0) * poly / (cd1 * (g * q - h) * (h * q - g));
  k.K2 = (c - g) * (d - g) * (h - 1.0) * (h - q) / (cd1 * (h - g) * (g * q - h));
  k.K3 = (c - h) * (d - h) * (g - 1.0) * (g - q) / (cd1 * (g - h) * (h * q - g));
  k.K4 = 1.0;
  return k;
}

/// The four (C, D; G, H) substitutions paired with K1..K4.
inline std::array<std::array<Complex, 4>, 4> contig_shifts(ContigKind kind, const ContigParams& p) {
  const Complex q = p.q, C = p.C, D = p.D, G = p.G, H = p.H;
  if (kind == ContigKind::psi_gh_upper) {
    return {{{C, D, G, H}, {C, D, G * q, H / q}, {C, D, G / q, H * q}, {C * q, D * q, G * q, H * q}}};
  }
  return {{{C, D, G, H}, {C * q, D / q, G, H}, {C / q, D * q, G, H}, {C / q, D / q, G / q, H / q}}};
}

inline SeriesSpec contig_series_spec(const ContigParams& p, const std::array<Complex, 4>& cdgh,
                                     bool bilateral) {
  SeriesSpec spec;
  spec.numerator = p.num_extra;
  spec.numerator.push_back(cdgh[0]);
  spec.numerator.push_back(cdgh[1]);
  spec.denominator = p.den_extra;
  spec.denominator.push_back(cdgh[2]);
  spec.denominator.push_back(cdgh[3]);
  spec.z = p.t;
  spec.bilateral = bilateral;
  return spec;
}

inline IdentityId identity_for(ContigKind kind) {
  switch (kind) {
    case ContigKind::phi4: return IdentityId::contig_phi4;
    case ContigKind::psi_cd_lower: return IdentityId::contig_psi_cd_lower;
    case ContigKind::psi_gh_upper: return IdentityId::contig_psi_gh_upper;
  }
  return IdentityId::contig_phi4;
}

inline SampleRecord contig_param_record(const ContigParams& p) {
  SampleRecord rec;
  rec.param("q", p.q.real()).param("C", p.C.real()).param("D", p.D.real());
  rec.param("G", p.G.real()).param("H", p.H.real()).param("t", p.t.real());
  for (std::size_t i = 0; i < p.num_extra.size(); ++i)
    rec.param("num" + std::to_string(i), p.num_extra[i].real());
  for (std::size_t i = 0; i < p.den_extra.size(); ++i)
    rec.param("den" + std::to_string(i), p.den_extra[i].real());
  return rec;
}

/// Evaluates K1 S1 + K2 S2 + K3 S3 + K4 S4; the residual is relative to max |K_j S_j|.
inline VerificationReport verify_relation(ContigKind kind, const ContigParams& p,
                                          const QContext& ctx, double tol = 1e-9) {
  const QContext local(p.q, ctx.trunc_eps, ctx.max_terms);
  const ContigCoeffs k = kind == ContigKind::phi4           ? solve_coeffs(p)
                         : kind == ContigKind::psi_cd_lower ? psi_cd_lower_coeffs(p)
                                                            : psi_gh_upper_coeffs(p);
  const std::array<Complex, 4> coeff = {k.K1, k.K2, k.K3, k.K4};
  const auto shifts = contig_shifts(kind, p);
  const bool bilateral = kind != ContigKind::phi4;

  Complex total{0.0, 0.0};
  double largest = 0.0;
  for (int j = 0; j < 4; ++j) {
    const SeriesSpec spec = contig_series_spec(p, shifts[j], bilateral);
    const Complex v = bilateral ? eval_psi(spec, local).value : eval_phi(spec, local).value;
    total += coeff[j] * v;
    largest = std::max(largest, std::abs(coeff[j] * v));
  }
  VerificationReport r;
  r.identity = identity_for(kind);
  r.tolerance = tol;
  SampleRecord rec = contig_param_record(p);
  rec.residual = std::abs(total) / (largest + 1e-30);
  r.samples.push_back(std::move(rec));
  r.finalize();
  return r;
}

namespace detail {

inline bool contig_nondegenerate(const ContigParams& p) {
  const Complex q = p.q, c = p.C, d = p.D, g = p.G, h = p.H;
  for (Complex v : {c - d, c * q - d, d * q - c, g - q, h - q, c - 1.0, d - 1.0, g * q - h,
                    h * q - g, h - g}) {
    if (std::abs(v) <= 1e-3) return false;
  }
  return true;
}

}  // namespace detail

/// A random instance for the given relation; degenerate draws are redrawn.
///
/// phi4 instances terminate (A = q^{-n}, argument q). Bilateral instances are
/// 3psi3 with |b0 g h / (a1 c d)| < 1/4 and argument t = sqrt of that ratio,
/// so both sides decay geometrically.
template <class Rng>
ContigParams sample_contig(ContigKind kind, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.1, 0.7);
  std::uniform_real_distribution<double> base(0.2, 0.5);
  std::uniform_int_distribution<int> degree(0, 6);
  for (;;) {
    ContigParams p;
    p.q = base(rng);
    p.C = unit(rng);
    p.D = unit(rng);
    p.G = unit(rng);
    p.H = unit(rng);
    if (kind == ContigKind::phi4) {
      p.num_extra = {std::pow(p.q, -degree(rng)), unit(rng)};
      p.den_extra = {unit(rng)};
      p.t = p.q;
    } else {
      const Complex a1 = unit(rng), b0 = unit(rng);
      const double ratio = std::abs(b0 * p.G * p.H / (a1 * p.C * p.D));
      if (ratio >= 0.25) continue;
      p.num_extra = {a1};
      p.den_extra = {b0};
      p.t = std::sqrt(ratio);
    }
    if (detail::contig_nondegenerate(p)) return p;
  }
}

}  // namespace awq
