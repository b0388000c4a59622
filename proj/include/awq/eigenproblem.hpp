#pragma once

// Residual functionals for every identity the library checks, and the sweep
// driver that turns them into verification reports.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "awq/associated.hpp"
#include "awq/awoperator.hpp"
#include "awq/awpoly.hpp"
#include "awq/contiguous.hpp"
#include "awq/errors.hpp"
#include "awq/inverseop.hpp"
#include "awq/qcore.hpp"
#include "awq/quadrature.hpp"
#include "awq/report.hpp"

namespace awq {

inline constexpr double kResidualFloor = 1e-30;

inline double relative_residual(Complex lhs, Complex rhs) {
  return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + kResidualFloor);
}

/// Residual of 2x v0 = A v_plus + B v0 + C v_minus relative to the sum of term magnitudes.
inline double recurrence_residual(Complex x, const RecurrenceCoeffs& rc, Complex v_minus, Complex v0,
                                  Complex v_plus) {
  const Complex lhs = 2.0 * x * v0;
  const Complex ta = rc.A * v_plus, tb = rc.B * v0, tc = rc.C * v_minus;
  return std::abs(lhs - ta - tb - tc) /
         (std::abs(lhs) + std::abs(ta) + std::abs(tb) + std::abs(tc) + kResidualFloor);
}

namespace detail {

inline Complex theorem1_lambda(const AssocParams& ap, Complex z, const QContext& ctx) {
  return eigen_scalars(0, ap, z, ctx).lambda_theorem1;
}

inline OperatorParams theorem1_outer(const AssocParams& ap, Complex z, const QContext& ctx) {
  const Complex aqa = ap.base.a() * ctx.pow(Complex(ap.alpha));
  const Complex wz = ctx.pow(z);
  return {aqa, aqa / ctx.q, ctx.q * wz, ctx.q / wz};
}

inline OperatorParams lemma2_params(const AWParams& p, const QContext& ctx) {
  return {ctx.q / p.a(), ctx.q / p.b(), ctx.q / p.c(), ctx.q / p.d()};
}

/// (aq^{alpha+s}, aq^{alpha-s})_inf / (aq^s, aq^{-s})_inf
inline Complex inner_ratio(const AssocParams& ap, Complex s, const QContext& ctx) {
  const Complex a = ap.base.a(), qa = ctx.pow(Complex(ap.alpha)), w = ctx.pow(s);
  return qpoch_ratio_infinite({a * qa * w, a * qa / w}, {a * w, a / w}, ctx);
}

/// (aq^s, aq^{-s})_inf / (aq^{alpha+s-1}, aq^{alpha-s-1})_inf
inline Complex outer_ratio(const AssocParams& ap, Complex s, const QContext& ctx) {
  const Complex a = ap.base.a(), qa1 = ctx.pow(Complex(ap.alpha)) / ctx.q, w = ctx.pow(s);
  return qpoch_ratio_infinite({a * w, a / w}, {a * qa1 * w, a * qa1 / w}, ctx);
}

}  // namespace detail

/// Left side of the eigenvalue problem, assembled from two nested operator applications.
///
/// The inner operator acts in z on u(s', .) for each s' the outer stencil
/// visits; the outer operator acts in s with z frozen.
inline Complex lhs_theorem1(int n, const AssocParams& ap, Complex s, Complex z, const QContext& ctx) {
  const AWParams& p = ap.base;
  const Complex mu = eigen_scalars(n, ap, z, ctx).mu_alpha;
  const OperatorParams l1 = detail::lemma2_params(p, ctx);

  const LatticeFunction inner([&](Complex sp) {
    const LatticeFunction v([&, sp](Complex zp) { return u_fn(n, ap, sp, zp, ctx); });
    return detail::inner_ratio(ap, sp, ctx) * (apply_L(l1, v, z, ctx) + mu * v(z));
  });
  const Complex front = p.gamma() / std::pow(ctx.q, 3);
  const LatticeFunction scale([&](Complex sp) { return front * detail::outer_ratio(ap, sp, ctx); });
  return compose(detail::theorem1_outer(ap, z, ctx), scale, inner,
                 detail::theorem1_lambda(ap, z, ctx), ctx)(s);
}

/// The same left side written out as one explicit nine-point stencil.
inline Complex lhs_theorem1_monolithic(int n, const AssocParams& ap, Complex s, Complex z,
                                       const QContext& ctx) {
  const AWParams& p = ap.base;
  auto x = [&](Complex t) { return 0.5 * (ctx.pow(t) + ctx.pow(-t)); };
  auto op = [&](const std::array<Complex, 4>& roots, Complex t, Complex um, Complex u0, Complex up) {
    auto sig = [&](Complex r) {
      const Complex w = ctx.pow(r);
      return (w - roots[0]) * (w - roots[1]) * (w - roots[2]) * (w - roots[3]) / (w * w);
    };
    const Complex dx = x(t + 1.0) - x(t), nx = x(t) - x(t - 1.0), nx1 = x(t + 0.5) - x(t - 0.5);
    return (sig(-t) * nx * up + sig(t) * dx * um - (sig(t) * dx + sig(-t) * nx) * u0) /
           (dx * nx * nx1);
  };
  const Complex qa = ctx.pow(Complex(ap.alpha));
  const Complex K = 4.0 * ctx.pow(Complex(1.5)) / ((1.0 - ctx.q) * (1.0 - ctx.q));
  const Complex mu = K * (1.0 - qa) * (1.0 - ctx.pow(Complex(3.0 - ap.alpha)) / p.gamma());
  const Complex wz = ctx.pow(z);
  const Complex lam = K * (1.0 - p.a() * qa / wz) * (1.0 - p.a() * qa * wz);
  const std::array<Complex, 4> l1 = {ctx.q / p.a(), ctx.q / p.b(), ctx.q / p.c(), ctx.q / p.d()};
  const std::array<Complex, 4> l2 = {p.a() * qa, p.a() * qa / ctx.q, ctx.q * wz, ctx.q / wz};

  std::array<Complex, 3> f{};
  for (int i = 0; i < 3; ++i) {
    const Complex sp = s + static_cast<double>(i - 1);
    const Complex um = u_fn(n, ap, sp, z - 1.0, ctx);
    const Complex u0 = u_fn(n, ap, sp, z, ctx);
    const Complex up = u_fn(n, ap, sp, z + 1.0, ctx);
    const Complex wsp = ctx.pow(sp);
    const Complex ratio = qpoch_infinite(p.a() * qa * wsp, ctx) * qpoch_infinite(p.a() * qa / wsp, ctx) /
                          (qpoch_infinite(p.a() * wsp, ctx) * qpoch_infinite(p.a() / wsp, ctx));
    f[i] = ratio * (op(l1, z, um, u0, up) + mu * u0);
  }
  const Complex ws = ctx.pow(s);
  const Complex outer = qpoch_infinite(p.a() * ws, ctx) * qpoch_infinite(p.a() / ws, ctx) /
                        (qpoch_infinite(p.a() * qa / ctx.q * ws, ctx) *
                         qpoch_infinite(p.a() * qa / (ctx.q * ws), ctx));
  return p.gamma() / std::pow(ctx.q, 3) * outer * (op(l2, s, f[0], f[1], f[2]) + lam * f[1]);
}

/// (L0 + lambda_{alpha+n}) u scaled by 4 q^{3/2} / (1 - q)^2.
inline Complex rhs_theorem1(int n, const AssocParams& ap, Complex s, Complex z, const QContext& ctx) {
  const LatticeFunction u([&](Complex sp) { return u_fn(n, ap, sp, z, ctx); });
  const Complex lam = eigen_scalars(n, ap, z, ctx).lambda_alpha_n;
  return detail::eigen_constant(ctx) *
         (apply_L(OperatorParams::from(ap.base), u, s, ctx) + lam * u(s));
}

/// (L0 + lambda_{alpha+n}) u at (s, z); equals f_n^alpha by the first lemma.
inline Complex lemma1_lhs(int n, const AssocParams& ap, Complex s, Complex z, const QContext& ctx) {
  const LatticeFunction u([&](Complex sp) { return u_fn(n, ap, sp, z, ctx); });
  return apply_L(OperatorParams::from(ap.base), u, s, ctx) +
         eigen_scalars(n, ap, z, ctx).lambda_alpha_n * u(s);
}

/// (L1 + mu_alpha) u at (s, z), the operator acting in z; equals g_n^alpha.
inline Complex lemma2_lhs(int n, const AssocParams& ap, Complex s, Complex z, const QContext& ctx) {
  const LatticeFunction v([&](Complex zp) { return u_fn(n, ap, s, zp, ctx); });
  return apply_L(detail::lemma2_params(ap.base, ctx), v, z, ctx) +
         eigen_scalars(n, ap, z, ctx).mu_alpha * v(z);
}

/// Both sides of (L + lambda) p_n(a,b,c,d) = lambda p_n(a/q, bq, c, d) with L = L(s; a, a/q, c, d).
inline std::pair<Complex, Complex> lemma3_sides(int n, const AWParams& p, Complex s,
                                                const QContext& ctx) {
  const LatticeFunction u([&](Complex sp) { return aw_poly(n, p, sp, AWNormalization::phi, ctx); });
  const OperatorParams op{p.a(), p.a() / ctx.q, p.c(), p.d()};
  const Complex lam = eigen_scalars(0, AssocParams(p, 0.0), 0.0, ctx).lambda_lemma3;
  const AWParams shifted(p.a() / ctx.q, p.b() * ctx.q, p.c(), p.d());
  return {apply_L(op, u, s, ctx) + lam * u(s),
          lam * aw_poly(n, shifted, s, AWNormalization::phi, ctx)};
}

/// Sweep description shared by every identity.
struct SweepSpec {
  std::uint64_t seed = 42;
  std::optional<int> trials;  // identity default when unset
  std::optional<int> n_max;
  AWParams params{0.2, 0.3, 0.4, 0.5};
  double alpha = 0.37;
  double s_lo = 0.2, s_hi = 1.4;
};

inline double default_tolerance(IdentityId id) {
  switch (id) {
    case IdentityId::aw_recurrence: return 1e-10;
    case IdentityId::aw_eigen: return 1e-9;
    case IdentityId::lemma1:
    case IdentityId::lemma2: return 1e-8;
    case IdentityId::lemma3: return 1e-9;
    case IdentityId::theorem1: return 1e-6;
    case IdentityId::contig_coeffs: return 1e-12;
    case IdentityId::contig_phi4:
    case IdentityId::contig_psi_cd_lower:
    case IdentityId::contig_psi_gh_upper: return 1e-9;
    case IdentityId::assoc_recurrence: return 1e-8;
    case IdentityId::rs_solutions: return 1e-7;
    case IdentityId::alpha_zero_reduction: return 1e-9;
    case IdentityId::rep_consistency:
    case IdentityId::diagonal_proportionality: return 1e-7;
    case IdentityId::orthogonality: return 1e-8;
    case IdentityId::inverse_op: return 1e-4;
  }
  return 1e-8;
}

inline int default_trials(IdentityId id) {
  switch (id) {
    case IdentityId::aw_recurrence:
    case IdentityId::contig_coeffs: return 20;
    case IdentityId::contig_phi4:
    case IdentityId::contig_psi_cd_lower:
    case IdentityId::contig_psi_gh_upper: return 50;
    case IdentityId::inverse_op: return 2;
    default: return 10;
  }
}

inline int default_n_max(IdentityId id) {
  switch (id) {
    case IdentityId::aw_recurrence: return 10;
    case IdentityId::aw_eigen: return 6;
    case IdentityId::lemma1:
    case IdentityId::lemma2: return 5;
    case IdentityId::lemma3: return 8;
    case IdentityId::theorem1: return 4;
    case IdentityId::assoc_recurrence:
    case IdentityId::rep_consistency:
    case IdentityId::alpha_zero_reduction: return 4;
    case IdentityId::diagonal_proportionality: return 5;
    case IdentityId::rs_solutions: return 3;
    case IdentityId::orthogonality: return 4;
    case IdentityId::inverse_op: return 2;
    default: return 0;
  }
}

namespace detail {

/// Lattice coordinates within 0.03 of 0, +-1/2, +-1 make the operator singular or ill-conditioned.
inline bool near_degenerate(double s) {
  for (double bad : {-1.0, -0.5, 0.0, 0.5, 1.0})
    if (std::abs(s - bad) < 0.03) return true;
  return false;
}

template <class Rng>
double draw_lattice(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    const double s = u(rng);
    if (!near_degenerate(s)) return s;
  }
}

template <class Rng>
AWParams draw_params(Rng& rng) {
  std::uniform_real_distribution<double> u(0.1, 0.7);
  const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
  return {a, b, c, d};
}

inline SampleRecord base_record(const AWParams& p, const QContext& ctx) {
  SampleRecord r;
  r.param("q", ctx.q.real()).param("a", p.a().real()).param("b", p.b().real());
  r.param("c", p.c().real()).param("d", p.d().real());
  return r;
}

inline void run_sample(VerificationReport& report, SampleRecord rec,
                       const std::function<double(SampleRecord&)>& residual) {
  try {
    rec.residual = residual(rec);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  report.samples.push_back(std::move(rec));
}

inline constexpr double kReferenceTheta = 1.0;

}  // namespace detail

/// Runs one identity over the sweep. Failing samples are recorded, not thrown,
/// unless every sample fails.
inline VerificationReport verify(IdentityId id, const SweepSpec& sweep, double tol,
                                 const QContext& ctx) {
  const int trials = sweep.trials.value_or(default_trials(id));
  if (trials < 1)
    throw NumericError(ErrorKind::parameter_out_of_range, "sweep needs at least one trial");
  ctx.validate();
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport report;
  report.identity = id;
  report.tolerance = tol;
  std::mt19937_64 rng(sweep.seed);
  const int n_max = sweep.n_max.value_or(default_n_max(id));
  const AWParams& p = sweep.params;
  const AssocParams ap(p, sweep.alpha);
  std::uniform_real_distribution<double> theta_dist(0.1, 3.0);

  switch (id) {
    case IdentityId::aw_recurrence: {
      for (int t = 0; t < trials; ++t) {
        // alternate between real lattice points (x > 1) and the interval (x = cos theta)
        const LatticePoint pt = t % 2 == 0
                                    ? LatticePoint::from_s(detail::draw_lattice(rng, sweep.s_lo, sweep.s_hi), ctx)
                                    : LatticePoint::from_theta(theta_dist(rng), ctx);
        for (int n = 0; n <= n_max; ++n) {
          SampleRecord rec = detail::base_record(p, ctx);
          rec.param("n", n).param("x_re", pt.x.real()).param("x_im", pt.x.imag());
          detail::run_sample(report, std::move(rec), [&](SampleRecord&) {
            const RecurrenceCoeffs rc = aw_recurrence_coeffs(n, p, ctx);
            const Complex vm = n == 0 ? Complex{} : aw_poly(n - 1, p, pt, AWNormalization::phi, ctx);
            return recurrence_residual(pt.x, rc, vm, aw_poly(n, p, pt, AWNormalization::phi, ctx),
                                       aw_poly(n + 1, p, pt, AWNormalization::phi, ctx));
          });
        }
      }
      break;
    }
    case IdentityId::aw_eigen: {
      for (int t = 0; t < trials; ++t) {
        const AWParams pr = detail::draw_params(rng);
        const double s = detail::draw_lattice(rng, sweep.s_lo, sweep.s_hi);
        // n = 0 is the constant polynomial, where both sides vanish identically
        for (int n = 1; n <= n_max; ++n) {
          SampleRecord rec = detail::base_record(pr, ctx);
          rec.param("n", n).param("s", s);
          detail::run_sample(report, std::move(rec), [&](SampleRecord&) {
            const LatticeFunction u([&](Complex sp) { return aw_poly(n, pr, sp, AWNormalization::phi, ctx); });
            return relative_residual(apply_L(OperatorParams::from(pr), u, s, ctx),
                                     -lambda_nu(n, pr, ctx) * u(s));
          });
        }
      }
      break;
    }
    case IdentityId::lemma1:
    case IdentityId::lemma2:
    case IdentityId::theorem1: {
      for (int t = 0; t < trials; ++t) {
        const double s = detail::draw_lattice(rng, sweep.s_lo, sweep.s_hi);
        const double z = detail::draw_lattice(rng, sweep.s_lo, sweep.s_hi);
        for (int n = 0; n <= n_max; ++n) {
          SampleRecord rec = detail::base_record(p, ctx);
          rec.param("alpha", ap.alpha).param("n", n).param("s", s).param("z", z);
          detail::run_sample(report, std::move(rec), [&](SampleRecord&) {
            if (id == IdentityId::lemma1)
              return relative_residual(lemma1_lhs(n, ap, s, z, ctx), f_fn(n, ap, Complex(s), Complex(z), ctx));
            if (id == IdentityId::lemma2)
              return relative_residual(lemma2_lhs(n, ap, s, z, ctx), g_fn(n, ap, Complex(s), Complex(z), ctx));
            return relative_residual(lhs_theorem1(n, ap, s, z, ctx), rhs_theorem1(n, ap, s, z, ctx));
          });
        }
      }
      break;
    }
    case IdentityId::lemma3: {
      for (int t = 0; t < trials; ++t) {
        const AWParams pr = detail::draw_params(rng);
        const double s = detail::draw_lattice(rng, sweep.s_lo, sweep.s_hi);
        for (int n = 0; n <= n_max; ++n) {
          SampleRecord rec = detail::base_record(pr, ctx);
          rec.param("n", n).param("s", s);
          detail::run_sample(report, std::move(rec), [&](SampleRecord&) {
            const auto [lhs, rhs] = lemma3_sides(n, pr, s, ctx);
            return relative_residual(lhs, rhs);
          });
        }
      }
      break;
    }
    case IdentityId::assoc_recurrence: {
      for (int t = 0; t < trials; ++t) {
        const double theta = theta_dist(rng);
        const Complex x = std::cos(theta);
        for (int n = 0; n <= n_max; ++n) {
          SampleRecord rec = detail::base_record(p, ctx);
          rec.param("alpha", ap.alpha).param("n", n).param("theta", theta);
          detail::run_sample(report, std::move(rec), [&](SampleRecord& r) {
            const RecurrenceCoeffs rc = aw_recurrence_coeffs(n + ap.alpha, p, ctx);
            auto res = [&](auto rep) {
              const Complex vm = n == 0 ? Complex{} : rep(n - 1);
              return recurrence_residual(x, rc, vm, rep(n), rep(n + 1));
            };
            const double r4 = res([&](int k) { return assoc_ismail_rahman(k, ap, theta, ctx); });
            const double r5 = res([&](int k) { return assoc_rahman_double(k, ap, theta, ctx); });
            r.param("residual_ismail_rahman", r4).param("residual_rahman_double", r5);
            return std::max(r4, r5);
          });
        }
      }
      break;
    }
    case IdentityId::rep_consistency:
    case IdentityId::diagonal_proportionality: {
      const bool diag = id == IdentityId::diagonal_proportionality;
      auto ratio = [&](int n, double theta) {
        if (diag) {
          const LatticePoint pt = LatticePoint::from_theta(theta, ctx);
          return u_fn(n, ap, pt, pt, ctx) / assoc_by_recurrence(n, ap, pt.x, ctx);
        }
        return assoc_ismail_rahman(n, ap, theta, ctx) / assoc_rahman_double(n, ap, theta, ctx);
      };
      for (int t = 0; t < trials; ++t) {
        const double theta = theta_dist(rng);
        for (int n = 1; n <= n_max; ++n) {
          SampleRecord rec = detail::base_record(p, ctx);
          rec.param("alpha", ap.alpha).param("n", n).param("theta", theta);
          detail::run_sample(report, std::move(rec), [&](SampleRecord& r) {
            const Complex ref = ratio(n, detail::kReferenceTheta);
            const Complex here = ratio(n, theta);
            r.param("ratio_re", here.real()).param("ratio_im", here.imag());
            return std::abs(here - ref) / std::abs(ref);
          });
        }
      }
      break;
    }
    case IdentityId::alpha_zero_reduction: {
      const AssocParams ap0(p, 0.0);
      for (int t = 0; t < trials; ++t) {
        const double theta = theta_dist(rng);
        const double z = detail::draw_lattice(rng, sweep.s_lo, sweep.s_hi);
        const LatticePoint pt = LatticePoint::from_theta(theta, ctx);
        for (int n = 0; n <= n_max; ++n) {
          SampleRecord rec = detail::base_record(p, ctx);
          rec.param("n", n).param("theta", theta).param("z", z);
          detail::run_sample(report, std::move(rec), [&](SampleRecord&) {
            const Complex ref = aw_poly(n, p, pt, AWNormalization::phi, ctx);
            return std::max({relative_residual(u_fn(n, ap0, pt, LatticePoint::from_s(z, ctx), ctx), ref),
                             relative_residual(assoc_ismail_rahman(n, ap0, theta, ctx), ref),
                             relative_residual(assoc_rahman_double(n, ap0, theta, ctx), ref)});
          });
        }
      }
      break;
    }
    case IdentityId::rs_solutions: {
      // R needs |qz/a| < 1 and S needs |az| < 1
      const double z_hi = std::min(0.95 * std::abs(p.a() / ctx.q), 0.95 / std::abs(p.a()));
      std::uniform_real_distribution<double> zd(0.3, std::max(0.31, z_hi));
      for (int t = 0; t < trials; ++t) {
        const double z = zd(rng);
        const Complex x = 0.5 * (z + 1.0 / z);
        for (int n = 1; n <= n_max; ++n) {
          SampleRecord rec = detail::base_record(p, ctx);
          rec.param("alpha", ap.alpha).param("n", n).param("z", z);
          detail::run_sample(report, std::move(rec), [&](SampleRecord& r) {
            const RecurrenceCoeffs rc = aw_recurrence_coeffs(n + ap.alpha, p, ctx);
            std::array<Complex, 3> rv{}, sv{};
            for (int i = 0; i < 3; ++i) {
              rv[i] = solution_R(n - 1 + i, ap, z, ctx);
              sv[i] = solution_S(n - 1 + i, ap, z, ctx);
            }
            const double rr = recurrence_residual(x, rc, rv[0], rv[1], rv[2]);
            const double rs = recurrence_residual(x, rc, sv[0], sv[1], sv[2]);
            const Complex cas = rv[1] * sv[2] - rv[2] * sv[1];
            r.param("residual_R", rr).param("residual_S", rs).param("casoratian_abs", std::abs(cas));
            if (!(std::abs(cas) > 1e-10)) {
              r.label("casoratian", "vanishes");
              return 1.0;
            }
            return std::max(rr, rs);
          });
        }
      }
      break;
    }
    case IdentityId::orthogonality: {
      const QuadratureSpec qs{64, QuadratureRule::adaptive, 1e-10};
      for (int n = 0; n <= n_max; ++n) {
        for (int m = n + 1; m <= n_max; ++m) {
          SampleRecord rec = detail::base_record(p, ctx);
          rec.param("n", n).param("m", m);
          detail::run_sample(report, std::move(rec), [&](SampleRecord& r) {
            auto inner = [&](int i, int j) {
              return integrate_theta(
                         [&](double th) {
                           const LatticePoint pt = LatticePoint::from_theta(th, ctx);
                           return (aw_poly(i, p, pt, AWNormalization::phi, ctx) *
                                   aw_poly(j, p, pt, AWNormalization::phi, ctx))
                                      .real() *
                                  aw_weight_theta(th, p, ctx);
                         },
                         qs)
                  .value;
            };
            const double off = inner(n, m);
            r.param("integral", off);
            r.param("normalized", std::abs(off) / std::sqrt(inner(n, n) * inner(m, m)));
            return std::abs(off);
          });
        }
      }
      break;
    }
    case IdentityId::contig_coeffs: {
      for (int t = 0; t < trials; ++t) {
        const ContigParams cp = sample_contig(ContigKind::phi4, rng);
        detail::run_sample(report, contig_param_record(cp), [&](SampleRecord&) {
          const ContigCoeffs a = solve_coeffs(cp), b = closed_form_coeffs(cp);
          return std::max({relative_residual(a.K1, b.K1), relative_residual(a.K2, b.K2),
                           relative_residual(a.K3, b.K3), relative_residual(a.K4, b.K4)});
        });
      }
      break;
    }
    case IdentityId::contig_phi4:
    case IdentityId::contig_psi_cd_lower:
    case IdentityId::contig_psi_gh_upper: {
      const ContigKind kind = id == IdentityId::contig_phi4           ? ContigKind::phi4
                              : id == IdentityId::contig_psi_cd_lower ? ContigKind::psi_cd_lower
                                                                      : ContigKind::psi_gh_upper;
      for (int t = 0; t < trials; ++t) {
        const ContigParams cp = sample_contig(kind, rng);
        detail::run_sample(report, contig_param_record(cp), [&](SampleRecord&) {
          return verify_relation(kind, cp, ctx, tol).samples.front().residual;
        });
      }
      break;
    }
    case IdentityId::inverse_op: {
      const QuadratureSpec qs{64, QuadratureRule::adaptive, 1e-10};
      std::uniform_real_distribution<double> yd(-0.9, 0.9);
      for (int t = 0; t < trials; ++t) {
        const double y = yd(rng);
        for (KernelReading reading : kAllKernelReadings) {
          for (int n = 0; n <= n_max; ++n) {
            SampleRecord rec = detail::base_record(p, ctx);
            rec.param("n", n).param("y", y).label("reading", to_string(reading));
            detail::run_sample(report, std::move(rec), [&](SampleRecord& r) {
              const InverseResult ir = apply_inverse(n, p, y, qs, ctx, reading);
              r.param("lhs_re", ir.lhs.real()).param("lhs_im", ir.lhs.imag());
              r.param("rhs_re", ir.rhs.real()).param("rhs_im", ir.rhs.imag());
              return ir.residual;
            });
          }
        }
      }
      break;
    }
  }

  report.finalize();
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const bool all_failed = std::all_of(report.samples.begin(), report.samples.end(),
                                      [](const SampleRecord& s) { return !s.error.empty(); });
  if (all_failed)
    throw NumericError(ErrorKind::non_convergent,
                       "every sample of " + to_string(id) + " failed: " + report.samples.front().error);
  return report;
}

}  // namespace awq
