#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "awq/awpoly.hpp"
#include "awq/quadrature.hpp"

using namespace awq;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const QContext kCtx(0.3);
const AWParams kParams(0.2, 0.3, 0.4, 0.5);

double inner(int n, int m, const AWParams& p, const QContext& ctx) {
  const QuadratureSpec qs{64, QuadratureRule::adaptive, 1e-12};
  return integrate_theta(
             [&](double th) {
               const LatticePoint pt = LatticePoint::from_theta(th, ctx);
               return (aw_poly(n, p, pt, AWNormalization::phi, ctx) *
                       aw_poly(m, p, pt, AWNormalization::phi, ctx))
                          .real() *
                      aw_weight_theta(th, p, ctx);
             },
             qs)
      .value;
}

}  // namespace

TEST_CASE("low-degree polynomials") {
  const LatticePoint pt = LatticePoint::from_s(0.7, kCtx);
  CHECK(aw_poly(0, kParams, pt, AWNormalization::phi, kCtx) == Complex(1.0));

  // p_1 written out from the single nontrivial term of the 4phi3
  const Complex a = kParams.a(), b = kParams.b(), c = kParams.c(), d = kParams.d(), g = kParams.gamma();
  const double q = 0.3;
  const Complex t1 = (1.0 - 1.0 / q) * (1.0 - g) * (1.0 - a * pt.w) * (1.0 - a / pt.w) * q /
                     ((1.0 - q) * (1.0 - a * b) * (1.0 - a * c) * (1.0 - a * d));
  CHECK(rel(aw_poly(1, kParams, pt, AWNormalization::phi, kCtx), 1.0 + t1) < 1e-14);
}

TEST_CASE("series and recurrence agree up to degree 12") {
  for (double theta : {0.3, 1.2, 2.9}) {
    const LatticePoint pt = LatticePoint::from_theta(theta, kCtx);
    for (int n = 0; n <= 12; ++n) {
      const Complex series = aw_poly(n, kParams, pt, AWNormalization::phi, kCtx);
      const Complex rec = aw_poly_by_recurrence(n, kParams, pt.x, kCtx);
      CHECK(std::abs(series - rec) <= 1e-10 * std::max(1.0, std::abs(rec)));
    }
  }
}

TEST_CASE("the as-printed recurrence denominators do not reproduce the polynomials") {
  const LatticePoint pt = LatticePoint::from_s(0.8, kCtx);
  const Complex series = aw_poly(3, kParams, pt, AWNormalization::phi, kCtx);
  const Complex printed = aw_poly_by_recurrence(3, kParams, pt.x, kCtx, CoeffReading::as_printed);
  CHECK(rel(printed, series) > 1e-6);
}

TEST_CASE("recurrence coefficients satisfy A + B + C = a + 1/a") {
  for (int n = 0; n < 6; ++n) {
    const RecurrenceCoeffs rc = aw_recurrence_coeffs(n, kParams, kCtx);
    CHECK(rel(rc.A + rc.B + rc.C, kParams.a() + 1.0 / kParams.a()) < 1e-14);
  }
  CHECK(aw_recurrence_coeffs(0, kParams, kCtx).C == Complex(0.0));
}

TEST_CASE("full normalization is symmetric in a and b") {
  const LatticePoint pt = LatticePoint::from_theta(0.9, kCtx);
  for (int n = 0; n <= 6; ++n) {
    CHECK(rel(aw_poly(n, kParams.swapped_ab(), pt, AWNormalization::full, kCtx),
              aw_poly(n, kParams, pt, AWNormalization::full, kCtx)) < 1e-11);
  }
}

TEST_CASE("full and phi normalizations differ by a^-n (ab, ac, ad)_n") {
  const LatticePoint pt = LatticePoint::from_s(1.1, kCtx);
  for (int n = 0; n <= 5; ++n) {
    const Complex a = kParams.a();
    const Complex pre = std::pow(a, -n) * qpoch_finite(a * kParams.b(), kCtx, n) *
                        qpoch_finite(a * kParams.c(), kCtx, n) * qpoch_finite(a * kParams.d(), kCtx, n);
    CHECK(rel(aw_poly(n, kParams, pt, AWNormalization::full, kCtx),
              pre * aw_poly(n, kParams, pt, AWNormalization::phi, kCtx)) < 1e-14);
  }
}

TEST_CASE("polynomial of exact degree n") {
  // the (n+1)-th divided difference over distinct nodes vanishes, the n-th does not
  const int n = 4;
  std::vector<double> xs;
  for (int j = 0; j <= n + 1; ++j) xs.push_back(std::cos(0.2 + 0.5 * j));
  std::vector<Complex> dd;
  for (double x : xs) dd.push_back(aw_poly(n, kParams, LatticePoint::from_theta(std::acos(x), kCtx), AWNormalization::phi, kCtx));
  std::vector<Complex> lower;
  for (std::size_t order = 1; order < xs.size(); ++order) {
    for (std::size_t i = xs.size() - 1; i >= order; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - order]);
    if (order == static_cast<std::size_t>(n)) lower.assign(dd.begin(), dd.end());
  }
  CHECK(std::abs(dd.back()) < 1e-9 * std::abs(lower.back()));
  CHECK(std::abs(lower.back()) > 1e-6);
}

TEST_CASE("total mass of the weight is the Askey-Wilson integral") {
  const AWParams& p = kParams;
  const double mass = inner(0, 0, p, kCtx) / (2.0 * std::numbers::pi);
  const Complex a = p.a(), b = p.b(), c = p.c(), d = p.d();
  const Complex expected = qpoch_infinite(p.gamma(), kCtx) /
                           qpoch_multi({kCtx.q, a * b, a * c, a * d, b * c, b * d, c * d}, kCtx, infinity);
  CHECK(rel(mass, expected) < 1e-10);
}

TEST_CASE("orthogonality and the Favard norm ratio") {
  for (int n = 1; n <= 4; ++n) {
    for (int m = 0; m < n; ++m) CHECK(std::abs(inner(n, m, kParams, kCtx)) < 1e-12);
    const RecurrenceCoeffs cn = aw_recurrence_coeffs(n, kParams, kCtx);
    const RecurrenceCoeffs an1 = aw_recurrence_coeffs(n - 1, kParams, kCtx);
    CHECK(rel(inner(n, n, kParams, kCtx) / inner(n - 1, n - 1, kParams, kCtx), cn.C / an1.A) < 1e-9);
  }
}

TEST_CASE("weight in x and theta") {
  const double x = 0.35;
  CHECK(std::abs(aw_weight(x, kParams, kCtx) -
                 aw_weight_theta(std::acos(x), kParams, kCtx) / std::sqrt(1.0 - x * x)) < 1e-14);
  CHECK_THROWS_AS(aw_weight(1.0, kParams, kCtx), NumericError);
  CHECK_THROWS_AS(aw_weight_theta(0.5, AWParams(1.2, 0.3, 0.4, 0.5), kCtx), NumericError);
  CHECK_THROWS_AS(aw_weight_theta(0.5, AWParams(Complex(0.2, 0.1), 0.3, 0.4, 0.5), kCtx), NumericError);
}

TEST_CASE("degenerate parameters are reported") {
  CHECK_THROWS_AS(aw_poly(-1, kParams, LatticePoint::from_s(0.7, kCtx), AWNormalization::phi, kCtx), NumericError);
  CHECK_THROWS_AS(aw_recurrence_coeffs(1, AWParams(0.0, 0.3, 0.4, 0.5), kCtx), NumericError);
}
