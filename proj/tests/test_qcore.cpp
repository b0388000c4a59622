#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "awq/qcore.hpp"

using namespace awq;
using Catch::Matchers::WithinRel;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Complex direct_poch(Complex a, Complex q, int n) {
  Complex p = 1.0;
  for (int j = 0; j < n; ++j) p *= 1.0 - a * std::pow(q, j);
  return p;
}

}  // namespace

TEST_CASE("finite q-Pochhammer matches the defining product") {
  const QContext ctx(0.3);
  for (Complex a : {Complex(0.2), Complex(-0.7, 0.4), Complex(3.0)}) {
    for (int n : {0, 1, 5, 12}) CHECK(rel(qpoch_finite(a, ctx, n), direct_poch(a, 0.3, n)) < 1e-14);
  }
}

TEST_CASE("q-Pochhammer splits over concatenated ranges") {
  const QContext ctx(Complex(0.4, 0.2));
  const Complex a(0.3, -0.1);
  for (int m = 0; m < 5; ++m)
    for (int n = 0; n < 5; ++n)
      CHECK(rel(qpoch_finite(a, ctx, m + n),
                qpoch_finite(a, ctx, m) * qpoch_finite(a * ctx.pow(m), ctx, n)) < 1e-14);
}

TEST_CASE("negative-index q-Pochhammer inverts the shifted product") {
  const QContext ctx(0.35);
  const Complex a(0.6, 0.2);
  for (int k = 1; k < 6; ++k)
    CHECK(rel(qpoch_signed(a, ctx, -k) * qpoch_finite(a * ctx.pow(-k), ctx, k), 1.0) < 1e-13);
  CHECK_THROWS_AS(qpoch_signed(ctx.q * ctx.q, ctx, -2), NumericError);
}

TEST_CASE("(q;q)_inf agrees with the pentagonal number series") {
  for (double qv : {0.1, 0.3, 0.6}) {
    const QContext ctx(qv);
    double euler = 0.0;
    for (int k = -40; k <= 40; ++k) {
      const double e = k * (3.0 * k - 1.0) / 2.0;
      euler += (k % 2 == 0 ? 1.0 : -1.0) * std::pow(qv, e);
    }
    CHECK_THAT(qpoch_infinite(qv, ctx).real(), WithinRel(euler, 1e-13));
  }
}

TEST_CASE("(z;q)_inf agrees with Euler's expansion") {
  const QContext ctx(0.4);
  const Complex z(0.5, -0.3);
  Complex sum = 0.0, qq = 1.0;  // qq = (q;q)_k
  for (int k = 0; k < 80; ++k) {
    if (k > 0) qq *= 1.0 - std::pow(0.4, k);
    sum += (k % 2 == 0 ? 1.0 : -1.0) * std::pow(0.4, k * (k - 1) / 2.0) * std::pow(z, k) / qq;
  }
  CHECK(rel(qpoch_infinite(z, ctx), sum) < 1e-13);
}

TEST_CASE("multi-parameter products multiply their factors") {
  const QContext ctx(0.3);
  const Complex a(0.1), b(0.2, 0.5), c(-0.4);
  CHECK(rel(qpoch_multi({a, b, c}, ctx, 4),
            qpoch_finite(a, ctx, 4) * qpoch_finite(b, ctx, 4) * qpoch_finite(c, ctx, 4)) < 1e-15);
  CHECK(rel(qpoch_multi({a, b, c}, ctx, infinity),
            qpoch_infinite(a, ctx) * qpoch_infinite(b, ctx) * qpoch_infinite(c, ctx)) < 1e-15);
  CHECK(rel(qpoch_ratio_infinite({a, b}, {c}, ctx),
            qpoch_infinite(a, ctx) * qpoch_infinite(b, ctx) / qpoch_infinite(c, ctx)) < 1e-15);
  CHECK_THROWS_AS(qpoch_multi(std::span<const Complex>{}, ctx, 2), NumericError);
}

TEST_CASE("infinite product truncation respects the budget") {
  const QContext tight(0.9, 1e-16, 5);
  try {
    qpoch_infinite(0.5, tight);
    FAIL("expected budget error");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::budget_exceeded);
  }
  const QContext ctx(0.3);
  CHECK(qpoch_infinite_factor_count(0.5, ctx) > 20);
}

TEST_CASE("context validation rejects invalid bases") {
  CHECK_THROWS_AS(QContext(1.0), NumericError);
  CHECK_THROWS_AS(QContext(0.0), NumericError);
  CHECK_THROWS_AS(QContext(Complex(0.8, 0.8)), NumericError);
  CHECK_THROWS_AS(QContext(0.5, 0.0), NumericError);
  CHECK_THROWS_AS(QContext(0.5, 1e-16, 0), NumericError);
  CHECK_NOTHROW(QContext(Complex(-0.5, 0.1)));
}

TEST_CASE("lattice points agree across parametrizations") {
  const QContext ctx(0.3);
  const LatticePoint ps = LatticePoint::from_s(0.7, ctx);
  CHECK_THAT(ps.x.real(), WithinRel(std::cosh(0.7 * std::log(0.3)), 1e-14));
  CHECK(rel(lattice_x(0.7, ctx), ps.x) < 1e-15);

  const LatticePoint pt = LatticePoint::from_theta(1.1, ctx);
  CHECK_THAT(pt.x.real(), WithinRel(std::cos(1.1), 1e-15));
  CHECK(rel(ctx.pow(pt.s), pt.w) < 1e-14);

  const LatticePoint pw = LatticePoint::from_w(ps.w, ctx);
  CHECK(rel(pw.s, ps.s) < 1e-14);
  CHECK(rel(pw.x, ps.x) < 1e-14);

  // half shift: x_1(s) = x(s + 1/2)
  CHECK(rel(lattice_x(0.7, ctx, 1), lattice_x(1.2, ctx)) < 1e-15);
}

TEST_CASE("generalized power factors into q-shifted factorials") {
  // x(s) - x(t) = (1/2) q^{-s} (1 - q^{s+t})(1 - q^{s-t})
  const QContext ctx(0.4);
  const Complex s(0.8), z(0.3, 0.2);
  for (int m = 0; m < 6; ++m) {
    const Complex expected = std::pow(0.5, m) * ctx.pow(-static_cast<double>(m) * s) *
                             qpoch_finite(ctx.pow(s + z - static_cast<double>(m) + 1.0), ctx, m) *
                             qpoch_finite(ctx.pow(s - z), ctx, m);
    CHECK(rel(generalized_power(s, z, m, ctx), expected) < 1e-12);
  }
  CHECK_THROWS_AS(generalized_power(s, z, -1, ctx), NumericError);
}

TEST_CASE("wide conversions round-trip doubles") {
  const Complex z(0.123456789, -9.87654321);
  CHECK(to_complex(to_wide(z)) == z);
  CHECK(rel(to_complex(wide_pow(to_wide(0.3), -4)), std::pow(0.3, -4)) < 1e-15);
}

TEST_CASE("AW parameters carry their product") {
  const AWParams p(0.2, 0.3, 0.4, 0.5);
  CHECK_THAT(p.gamma().real(), WithinRel(0.012, 1e-15));
  CHECK(p.swapped_ab().a() == p.b());
}
