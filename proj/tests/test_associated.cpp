#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "awq/associated.hpp"
#include "awq/awoperator.hpp"
#include "awq/eigenproblem.hpp"

using namespace awq;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const QContext kCtx(0.3);
const AWParams kParams(0.2, 0.3, 0.4, 0.5);
const AssocParams kAssoc(kParams, 0.37);

}  // namespace

TEST_CASE("association shift must lie in [0, 1)") {
  CHECK_THROWS_AS(AssocParams(kParams, 1.0), NumericError);
  CHECK_THROWS_AS(AssocParams(kParams, -0.1), NumericError);
  CHECK_NOTHROW(AssocParams(kParams, 0.0));
}

TEST_CASE("alpha = 0 collapses every representation to the Askey-Wilson polynomial") {
  const AssocParams ap0(kParams, 0.0);
  for (double theta : {0.4, 1.7, 2.6}) {
    const LatticePoint pt = LatticePoint::from_theta(theta, kCtx);
    for (int n = 0; n <= 4; ++n) {
      const Complex p = aw_poly(n, kParams, pt, AWNormalization::phi, kCtx);
      CHECK(rel(assoc_by_recurrence(n, ap0, pt.x, kCtx), p) < 1e-11);
      CHECK(rel(assoc_ismail_rahman(n, ap0, theta, kCtx), p) < 1e-11);
      CHECK(rel(assoc_rahman_double(n, ap0, theta, kCtx), p) < 1e-11);
      CHECK(rel(u_fn(n, ap0, pt, LatticePoint::from_s(0.8, kCtx), kCtx), p) < 1e-11);
    }
  }
}

TEST_CASE("both explicit representations satisfy the shifted recurrence") {
  const double theta = 1.05;
  const Complex x = std::cos(theta);
  for (int n = 1; n <= 4; ++n) {
    const RecurrenceCoeffs rc = aw_recurrence_coeffs(n + kAssoc.alpha, kParams, kCtx);
    auto ir = [&](int k) { return assoc_ismail_rahman(k, kAssoc, theta, kCtx); };
    auto rd = [&](int k) { return assoc_rahman_double(k, kAssoc, theta, kCtx); };
    CHECK(recurrence_residual(x, rc, ir(n - 1), ir(n), ir(n + 1)) < 1e-11);
    CHECK(recurrence_residual(x, rc, rd(n - 1), rd(n), rd(n + 1)) < 1e-11);
  }
}

TEST_CASE("the corrected representations equal the recurrence solution") {
  for (double theta : {0.5, 2.2}) {
    const LatticePoint pt = LatticePoint::from_theta(theta, kCtx);
    for (int n = 0; n <= 4; ++n) {
      const Complex rec = assoc_by_recurrence(n, kAssoc, pt.x, kCtx);
      CHECK(rel(assoc_ismail_rahman(n, kAssoc, theta, kCtx), rec) < 1e-10);
      CHECK(rel(assoc_rahman_double(n, kAssoc, theta, kCtx), rec) < 1e-10);
    }
  }
}

TEST_CASE("the printed readings of the explicit sums fail") {
  const double theta = 1.05;
  const Complex x = std::cos(theta);
  // the printed leading parameter hits a pole of the inner series
  CHECK_THROWS_AS(assoc_ismail_rahman(2, kAssoc, theta, kCtx, AssocReading::as_printed), NumericError);
  const RecurrenceCoeffs rc = aw_recurrence_coeffs(2 + kAssoc.alpha, kParams, kCtx);
  auto rd = [&](int k) { return assoc_rahman_double(k, kAssoc, theta, kCtx, AssocReading::as_printed); };
  CHECK(recurrence_residual(x, rc, rd(1), rd(2), rd(3)) > 1e-4);
}

TEST_CASE("R and S solve the recurrence and are independent") {
  const double z = 0.45;
  const Complex x = 0.5 * (z + 1.0 / z);
  for (int n = 1; n <= 3; ++n) {
    const RecurrenceCoeffs rc = aw_recurrence_coeffs(n + kAssoc.alpha, kParams, kCtx);
    auto R = [&](int k) { return solution_R(k, kAssoc, z, kCtx); };
    auto S = [&](int k) { return solution_S(k, kAssoc, z, kCtx); };
    CHECK(recurrence_residual(x, rc, R(n - 1), R(n), R(n + 1)) < 1e-12);
    CHECK(recurrence_residual(x, rc, S(n - 1), S(n), S(n + 1)) < 1e-12);
    const Complex casoratian = R(n) * S(n + 1) - R(n + 1) * S(n);
    CHECK(std::abs(casoratian) > 1e-10);
  }
  const RecurrenceCoeffs rc = aw_recurrence_coeffs(2 + kAssoc.alpha, kParams, kCtx);
  auto Rp = [&](int k) { return solution_R(k, kAssoc, z, kCtx, AssocReading::as_printed); };
  CHECK(recurrence_residual(x, rc, Rp(1), Rp(2), Rp(3)) > 1e-6);
}

TEST_CASE("u on the diagonal is proportional to the associated polynomial") {
  for (int n = 1; n <= 4; ++n) {
    auto ratio = [&](double theta) {
      const LatticePoint pt = LatticePoint::from_theta(theta, kCtx);
      return u_fn(n, kAssoc, pt, pt, kCtx) / assoc_by_recurrence(n, kAssoc, pt.x, kCtx);
    };
    const Complex r0 = ratio(0.4);
    for (double theta : {1.1, 1.9, 2.7}) CHECK(rel(ratio(theta), r0) < 1e-9);
  }
}

TEST_CASE("f vanishes at alpha = 0") {
  const AssocParams ap0(kParams, 0.0);
  for (int n = 0; n <= 3; ++n) CHECK(std::abs(f_fn(n, ap0, Complex(0.7), Complex(0.9), kCtx)) == 0.0);
}

TEST_CASE("first lemma: (L0 + lambda) u = f") {
  for (int n = 0; n <= 5; ++n) {
    for (auto [s, z] : {std::pair{0.63, 0.88}, std::pair{1.21, 0.34}}) {
      CHECK(relative_residual(lemma1_lhs(n, kAssoc, s, z, kCtx), f_fn(n, kAssoc, Complex(s), Complex(z), kCtx)) < 1e-10);
      CHECK(relative_residual(lemma2_lhs(n, kAssoc, s, z, kCtx), g_fn(n, kAssoc, Complex(s), Complex(z), kCtx)) < 1e-10);
    }
  }
}

TEST_CASE("eigenvalue scalars") {
  const double q = 0.3, alpha = kAssoc.alpha;
  const Complex K = 4.0 * std::pow(q, 1.5) / ((1.0 - q) * (1.0 - q));
  const Complex g = kParams.gamma();
  const EigenScalars e = eigen_scalars(2, kAssoc, 0.6, kCtx);
  CHECK(rel(e.lambda_alpha_n, K * (1.0 - std::pow(q, -(2 + alpha))) * (1.0 - g * std::pow(q, 1 + alpha))) < 1e-14);
  CHECK(rel(e.mu_alpha, K * (1.0 - std::pow(q, alpha)) * (1.0 - std::pow(q, 3 - alpha) / g)) < 1e-14);
  CHECK(rel(lambda_nu(3, kParams, kCtx), K * (1.0 - std::pow(q, -3)) * (1.0 - g * q * q)) < 1e-14);
}
