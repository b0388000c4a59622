#pragma once

// Command-line front end: argument parsing into a RunConfig and the
// dispatcher that evaluates objects or runs verifications.

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "awq/associated.hpp"
#include "awq/awpoly.hpp"
#include "awq/eigenproblem.hpp"
#include "awq/errors.hpp"
#include "awq/inverseop.hpp"
#include "awq/qcore.hpp"
#include "awq/report.hpp"

namespace awq::cli {

enum class Command { eval, verify, sweep };

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFail = 2;

struct RunConfig {
  Command command = Command::eval;
  std::vector<std::string> targets;
  double q = 0.3, a = 0.2, b = 0.3, c = 0.4, d = 0.5;
  double alpha = 0.37;
  int n = 0;
  std::optional<double> s, z, x, theta, y;
  std::optional<double> tol;
  double trunc_eps = 1e-16;
  std::uint64_t seed = 42;
  std::optional<int> trials;
  std::optional<int> n_max;
  OutputFormat output = OutputFormat::json_lines;
  bool timing = false;
  std::string norm = "phi";          // aw: phi | full
  std::string rep = "recurrence";    // assoc: recurrence | ismail_rahman | rahman_double
  std::string reading = "standard";  // aw_rec, assoc, R, kernel variants
};

/// Gating identities run by `sweep` with no targets.
inline std::vector<IdentityId> gating_identities() {
  std::vector<IdentityId> ids;
  for (const auto& [id, name] : kIdentityNames)
    if (id != IdentityId::inverse_op) ids.push_back(id);
  return ids;
}

/// Builds the parser bound to `cfg`. Numeric flags may also come from a
/// key=value file given with --config; flags on the command line win.
inline void configure(CLI::App& app, RunConfig& cfg) {
  static const std::map<std::string, Command> commands = {
      {"eval", Command::eval}, {"verify", Command::verify}, {"sweep", Command::sweep}};
  static const std::map<std::string, OutputFormat> formats = {
      {"json-lines", OutputFormat::json_lines}, {"csv", OutputFormat::csv}, {"pretty", OutputFormat::pretty}};

  app.set_config("--config", "", "key=value parameter file");
  app.add_option("command", cfg.command, "eval | verify | sweep")
      ->required()
      ->transform(CLI::CheckedTransformer(commands, CLI::ignore_case));
  app.add_option("targets", cfg.targets, "object to evaluate or identities to verify");
  app.add_option("--q", cfg.q, "base q");
  app.add_option("--a", cfg.a);
  app.add_option("--b", cfg.b);
  app.add_option("--c", cfg.c);
  app.add_option("--d", cfg.d);
  app.add_option("--alpha", cfg.alpha, "association shift in [0, 1)");
  app.add_option("--n", cfg.n, "degree")->check(CLI::NonNegativeNumber);
  app.add_option("--s", cfg.s, "lattice coordinate, x = (q^s + q^-s)/2");
  app.add_option("--z", cfg.z, "second lattice coordinate");
  app.add_option("--x", cfg.x, "point x directly");
  app.add_option("--theta", cfg.theta, "x = cos(theta)");
  app.add_option("--y", cfg.y, "kernel second variable");
  app.add_option("--tol", cfg.tol, "pass threshold (identity default when omitted)");
  app.add_option("--trunc-eps,--trunc_eps", cfg.trunc_eps, "series truncation tolerance");
  app.add_option("--seed", cfg.seed);
  app.add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  app.add_option("--n-max,--n_max", cfg.n_max)->check(CLI::NonNegativeNumber);
  app.add_option("--output,-o", cfg.output, "json-lines | csv | pretty")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_flag("--timing", cfg.timing, "include runtime_ms in summaries");
  app.add_option("--norm", cfg.norm)->check(CLI::IsMember({"phi", "full"}));
  app.add_option("--rep", cfg.rep)->check(CLI::IsMember({"recurrence", "ismail_rahman", "rahman_double"}));
  app.add_option("--reading", cfg.reading)
      ->check(CLI::IsMember({"standard", "as_printed", "corrected", "vwp_sign", "w87"}));
}

namespace detail {

inline LatticePoint point_from_x(Complex x, const QContext& ctx) {
  return LatticePoint::from_w(x + std::sqrt(x * x - 1.0), ctx);
}

inline LatticePoint resolve_point(const std::optional<double>& s, const std::optional<double>& x,
                                  const std::optional<double>& theta, const QContext& ctx,
                                  const char* what) {
  const int given = s.has_value() + x.has_value() + theta.has_value();
  if (given != 1)
    throw CLI::ValidationError(std::string("exactly one of --s, --x, --theta is required for ") + what);
  if (s) return LatticePoint::from_s(*s, ctx);
  if (theta) return LatticePoint::from_theta(*theta, ctx);
  return point_from_x(*x, ctx);
}

inline double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw CLI::ValidationError(std::string(flag) + " is required for this target");
  return *v;
}

inline nlohmann::ordered_json config_params(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["q"] = cfg.q;
  j["a"] = cfg.a;
  j["b"] = cfg.b;
  j["c"] = cfg.c;
  j["d"] = cfg.d;
  j["alpha"] = cfg.alpha;
  j["n"] = cfg.n;
  for (const auto& [k, v] : {std::pair{"s", cfg.s}, {"z", cfg.z}, {"x", cfg.x}, {"theta", cfg.theta},
                             {"y", cfg.y}})
    if (v) j[k] = *v;
  j["trunc_eps"] = cfg.trunc_eps;
  return j;
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline void write_value(std::ostream& out, const RunConfig& cfg, const std::string& target, Complex v,
                        const std::string& warning) {
  switch (cfg.output) {
    case OutputFormat::json_lines: {
      nlohmann::ordered_json j;
      j["target"] = target;
      j["params"] = config_params(cfg);
      j["re"] = v.real();
      j["im"] = v.imag();
      if (!warning.empty()) j["warning"] = warning;
      out << j.dump() << '\n';
      break;
    }
    case OutputFormat::csv:
      out << "target,re,im\n" << target << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
      break;
    case OutputFormat::pretty:
      out << target << " = " << std::setprecision(17) << v.real();
      if (v.imag() != 0.0) out << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i";
      out << std::defaultfloat << '\n';
      if (!warning.empty()) out << "warning: " << warning << '\n';
      break;
  }
}

inline AssocReading assoc_reading(const std::string& r) {
  return r == "as_printed" ? AssocReading::as_printed : AssocReading::corrected;
}

inline KernelReading kernel_reading(const std::string& r) {
  if (r == "as_printed") return KernelReading::as_printed;
  if (r == "vwp_sign") return KernelReading::vwp_sign;
  return KernelReading::w87;
}

inline int run_eval(const RunConfig& cfg, const QContext& ctx, std::ostream& out) {
  if (cfg.targets.size() != 1) throw CLI::ValidationError("eval takes exactly one target");
  const std::string& target = cfg.targets.front();
  const AWParams p(cfg.a, cfg.b, cfg.c, cfg.d);
  auto assoc = [&] { return AssocParams(p, cfg.alpha); };
  Complex v;
  std::string warning;

  if (target == "aw") {
    const LatticePoint pt = resolve_point(cfg.s, cfg.x, cfg.theta, ctx, "aw");
    v = aw_poly(cfg.n, p, pt, cfg.norm == "full" ? AWNormalization::full : AWNormalization::phi, ctx);
  } else if (target == "aw_rec") {
    const LatticePoint pt = resolve_point(cfg.s, cfg.x, cfg.theta, ctx, "aw_rec");
    v = aw_poly_by_recurrence(cfg.n, p, pt.x, ctx,
                              cfg.reading == "as_printed" ? CoeffReading::as_printed : CoeffReading::standard);
  } else if (target == "assoc") {
    const LatticePoint pt = resolve_point(cfg.s, cfg.x, cfg.theta, ctx, "assoc");
    const AssocReading r = assoc_reading(cfg.reading);
    if (cfg.rep == "ismail_rahman") v = assoc_ismail_rahman_w(cfg.n, assoc(), pt.w, ctx, r);
    else if (cfg.rep == "rahman_double") v = assoc_rahman_double_w(cfg.n, assoc(), pt.w, ctx, r);
    else v = assoc_by_recurrence(cfg.n, assoc(), pt.x, ctx);
  } else if (target == "u" || target == "f" || target == "g") {
    const LatticePoint xs = resolve_point(cfg.s, cfg.x, cfg.theta, ctx, target.c_str());
    const LatticePoint yz = LatticePoint::from_s(need(cfg.z, "--z"), ctx);
    v = target == "u" ? u_fn(cfg.n, assoc(), xs, yz, ctx)
        : target == "f" ? f_fn(cfg.n, assoc(), xs, yz, ctx)
                        : g_fn(cfg.n, assoc(), xs, yz, ctx);
  } else if (target == "R") {
    v = solution_R(cfg.n, assoc(), need(cfg.z, "--z"), ctx, assoc_reading(cfg.reading));
  } else if (target == "S") {
    v = solution_S(cfg.n, assoc(), need(cfg.z, "--z"), ctx, assoc_reading(cfg.reading));
  } else if (target == "kernel") {
    const KernelValue kv = kernel_L(need(cfg.x, "--x"), need(cfg.y, "--y"), p, ctx, kernel_reading(cfg.reading));
    v = kv.value;
    warning = kv.warning;
  } else if (target == "weight") {
    v = cfg.theta ? aw_weight_theta(*cfg.theta, p, ctx) : aw_weight(need(cfg.x, "--x"), p, ctx);
  } else {
    throw CLI::ValidationError("unknown eval target '" + target +
                               "' (aw, aw_rec, assoc, u, f, g, R, S, kernel, weight)");
  }
  write_value(out, cfg, target, v, warning);
  return kExitPass;
}

inline std::vector<IdentityId> resolve_identities(const RunConfig& cfg) {
  if (cfg.command == Command::sweep && cfg.targets.empty()) return gating_identities();
  if (cfg.command == Command::verify && cfg.targets.size() != 1)
    throw CLI::ValidationError("verify takes exactly one identity");
  std::vector<IdentityId> ids;
  for (const std::string& t : cfg.targets) {
    const auto id = identity_from_string(t);
    if (!id) throw CLI::ValidationError("unknown identity '" + t + "'");
    ids.push_back(*id);
  }
  return ids;
}

inline int run_verify(const RunConfig& cfg, const QContext& ctx, std::ostream& out) {
  SweepSpec sweep;
  sweep.seed = cfg.seed;
  sweep.trials = cfg.trials;
  sweep.n_max = cfg.n_max;
  sweep.params = AWParams(cfg.a, cfg.b, cfg.c, cfg.d);
  sweep.alpha = cfg.alpha;
  bool all_passed = true;
  bool header = true;
  for (IdentityId id : resolve_identities(cfg)) {
    const VerificationReport r = verify(id, sweep, cfg.tol.value_or(default_tolerance(id)), ctx);
    write_report(out, r, cfg.output, cfg.timing, header);
    header = false;
    all_passed = all_passed && r.passed;
  }
  return all_passed ? kExitPass : kExitFail;
}

}  // namespace detail

/// Executes a parsed configuration. Results go to `out`, diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const QContext ctx(cfg.q, cfg.trunc_eps);
    if (cfg.command == Command::eval) return detail::run_eval(cfg, ctx, out);
    return detail::run_verify(cfg, ctx, out);
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const NumericError& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

/// Parses argv and runs; usage errors map to exit status 1.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Askey-Wilson and associated Askey-Wilson function toolkit"};
  RunConfig cfg;
  configure(app, cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitError;
  }
  return run(cfg, out, err);
}

}  // namespace awq::cli
