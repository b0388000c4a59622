#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "awq/inverseop.hpp"

using namespace awq;

namespace {

const QContext kCtx(0.3);
const AWParams kParams(0.2, 0.3, 0.4, 0.5);

}  // namespace

TEST_CASE("(.;q)_1 factor of the prefactor") {
  const Complex a = kParams.a(), c = kParams.c(), d = kParams.d();
  const Complex ep = std::polar(1.0, 0.8);
  const Complex direct = (1.0 - a * c) * (1.0 - a * d) * (1.0 - 0.3 * c * ep) * (1.0 - 0.3 * d / ep);
  CHECK(std::abs(qpoch_multi({a * c, a * d, 0.3 * c * ep, 0.3 * d / ep}, kCtx, 1) - direct) < 1e-15);
}

TEST_CASE("kernel is finite on a grid under every reading") {
  for (KernelReading reading : kAllKernelReadings) {
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const double x = -0.9 + 0.2 * i, y = -0.9 + 0.2 * j;
        const KernelValue k = kernel_L(x, y, kParams, kCtx, reading);
        CHECK(std::isfinite(k.value.real()));
        CHECK(std::isfinite(k.value.imag()));
        CHECK(k.warning.empty() == (reading == KernelReading::w87));
      }
    }
  }
}

TEST_CASE("conjugate symmetry of the kernel is recorded") {
  double worst = 0.0;
  for (double x : {-0.5, 0.1, 0.7})
    for (double y : {-0.3, 0.4})
      worst = std::max(worst, std::abs(kernel_L(x, y, kParams, kCtx).value.imag()));
  INFO("largest imaginary part " << worst);
  CHECK_NOFAIL(worst < 1e-9);
}

TEST_CASE("inversion residuals are reported for n = 0 and n = 1") {
  const QuadratureSpec qs{64, QuadratureRule::adaptive, 1e-10};
  for (KernelReading reading : kAllKernelReadings) {
    const InverseResult r0 = apply_inverse(0, kParams, 0.3, qs, kCtx, reading);
    CHECK(r0.rhs == Complex(1.0));
    CHECK(std::isfinite(r0.residual));
    const InverseResult r1 = apply_inverse(1, kParams, 0.3, qs, kCtx, reading);
    const AWParams shifted(0.2 * 0.3, 0.3 / 0.3, 0.4, 0.5);
    CHECK(std::abs(r1.rhs - aw_poly(1, shifted, LatticePoint::from_theta(std::acos(0.3), kCtx),
                                    AWNormalization::phi, kCtx)) < 1e-14);
    INFO(to_string(reading) << " residuals " << r0.residual << ", " << r1.residual);
    CHECK_NOFAIL(r1.residual < 1e-4);
  }
}

TEST_CASE("with the 8W7 reading the mismatch does not depend on n") {
  const QuadratureSpec qs{64, QuadratureRule::adaptive, 1e-10};
  const InverseResult r0 = apply_inverse(0, kParams, 0.3, qs, kCtx);
  for (int n = 1; n <= 2; ++n) {
    const InverseResult r = apply_inverse(n, kParams, 0.3, qs, kCtx);
    CHECK(std::abs(r.lhs / r.rhs - r0.lhs / r0.rhs) < 1e-8);
  }
}

TEST_CASE("grid quadrature converges under refinement") {
  QuadratureSpec coarse{16, QuadratureRule::fixed_theta_grid, 1e-10};
  QuadratureSpec fine{32, QuadratureRule::fixed_theta_grid, 1e-10};
  QuadratureSpec finest{128, QuadratureRule::fixed_theta_grid, 1e-10};
  const Complex ref = apply_inverse(1, kParams, 0.3, finest, kCtx).lhs;
  const double e16 = std::abs(apply_inverse(1, kParams, 0.3, coarse, kCtx).lhs - ref);
  const double e32 = std::abs(apply_inverse(1, kParams, 0.3, fine, kCtx).lhs - ref);
  CHECK(e32 < e16);
  // node doubling changes the integral by less than abs_tol once resolved
  const QuadratureSpec q64{64, QuadratureRule::fixed_theta_grid, 1e-10};
  CHECK(std::abs(apply_inverse(1, kParams, 0.3, q64, kCtx).lhs - ref) < 1e-10);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(kernel_L(1.0, 0.2, kParams, kCtx), NumericError);
  CHECK_THROWS_AS(kernel_L(0.1, 0.2, AWParams(0.2, 0.3, 1.2, 0.5), kCtx), NumericError);
  CHECK_THROWS_AS(QuadratureSpec({8, QuadratureRule::adaptive, 1e-10}).validate(), NumericError);
  const QuadratureSpec qs{64, QuadratureRule::adaptive, 1e-10};
  CHECK_THROWS_AS(apply_inverse(0, kParams, 1.5, qs, kCtx), NumericError);
}
