#pragma once

// The Askey-Wilson divided-difference operator L(s; a, b, c, d) acting on
// lazily evaluated functions of the lattice variable.

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>
#include <utility>

#include "awq/errors.hpp"
#include "awq/qcore.hpp"

namespace awq {

/// A function s -> complex with an optional per-instance memo table.
///
/// Copies share the same table, so a function handed to several operator
/// applications is evaluated once per distinct s.
class LatticeFunction {
 public:
  using Fn = std::function<Complex(Complex)>;

  LatticeFunction() : LatticeFunction([](Complex) { return Complex{}; }) {}
  explicit LatticeFunction(Fn f, bool memoize = true)
      : state_(std::make_shared<State>(State{std::move(f), memoize, {}})) {}

  static LatticeFunction constant(Complex v) {
    return LatticeFunction([v](Complex) { return v; }, false);
  }

  Complex operator()(Complex s) const {
    if (!state_->memoize) return state_->fn(s);
    const Key key{std::bit_cast<std::uint64_t>(s.real()), std::bit_cast<std::uint64_t>(s.imag())};
    if (auto it = state_->cache.find(key); it != state_->cache.end()) return it->second;
    const Complex v = state_->fn(s);
    state_->cache.emplace(key, v);
    return v;
  }

  std::size_t cache_size() const { return state_->cache.size(); }

 private:
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.first) ^ (std::hash<std::uint64_t>{}(k.second) * 0x9e3779b97f4a7c15ULL);
    }
  };
  struct State {
    Fn fn;
    bool memoize;
    std::unordered_map<Key, Complex, KeyHash> cache;
  };
  std::shared_ptr<State> state_;
};

/// The four roots of sigma(s) = q^{-2s}(q^s - a)(q^s - b)(q^s - c)(q^s - d).
struct OperatorParams {
  Complex a, b, c, d;

  static OperatorParams from(const AWParams& p) { return {p.a(), p.b(), p.c(), p.d()}; }
};

inline Complex sigma(const OperatorParams& op, Complex s, const QContext& ctx) {
  const Complex w = ctx.pow(s);
  return (w - op.a) * (w - op.b) * (w - op.c) * (w - op.d) / (w * w);
}

/// Lattice differences at s: dx = x(s+1) - x(s), nx = x(s) - x(s-1), nx1 = x(s+1/2) - x(s-1/2).
struct LatticeDifferences {
  Complex delta_x, nabla_x, nabla_x1;
};

inline LatticeDifferences lattice_differences(Complex s, const QContext& ctx) {
  constexpr double floor = 1e-13;
  const Complex x0 = lattice_x(s, ctx);
  LatticeDifferences d{lattice_x(s + 1.0, ctx) - x0, x0 - lattice_x(s - 1.0, ctx),
                       lattice_x(s, ctx, 1) - lattice_x(s, ctx, -1)};
  if (std::abs(d.delta_x) <= floor || std::abs(d.nabla_x) <= floor || std::abs(d.nabla_x1) <= floor)
    throw NumericError(ErrorKind::degenerate_lattice_point, "lattice differences vanish at this s");
  return d;
}

/// (L u)(s) from the three values u(s-1), u(s), u(s+1).
inline Complex apply_L_stencil(const OperatorParams& op, Complex s, Complex u_minus, Complex u0,
                               Complex u_plus, const QContext& ctx) {
  const LatticeDifferences d = lattice_differences(s, ctx);
  const Complex sp = sigma(op, s, ctx);
  const Complex sm = sigma(op, -s, ctx);
  const Complex num = sm * d.nabla_x * u_plus + sp * d.delta_x * u_minus -
                      (sp * d.delta_x + sm * d.nabla_x) * u0;
  return num / (d.delta_x * d.nabla_x * d.nabla_x1);
}

inline Complex apply_L(const OperatorParams& op, const LatticeFunction& u, Complex s,
                       const QContext& ctx) {
  lattice_differences(s, ctx);
  return apply_L_stencil(op, s, u(s - 1.0), u(s), u(s + 1.0), ctx);
}

/// s -> scale_pre(s) * [(L_outer inner)(s) + shift_lambda * inner(s)].
inline LatticeFunction compose(const OperatorParams& outer, LatticeFunction scale_pre,
                               LatticeFunction inner_result, Complex shift_lambda,
                               const QContext& ctx) {
  return LatticeFunction([=](Complex s) {
    return scale_pre(s) * (apply_L(outer, inner_result, s, ctx) + shift_lambda * inner_result(s));
  });
}

}  // namespace awq
