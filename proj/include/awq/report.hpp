#pragma once

// Verification report records and their JSON-lines / CSV / pretty renderings.

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace awq {

enum class IdentityId {
  lemma1,
  lemma2,
  lemma3,
  theorem1,
  aw_recurrence,
  assoc_recurrence,
  rep_consistency,
  alpha_zero_reduction,
  diagonal_proportionality,
  rs_solutions,
  aw_eigen,
  orthogonality,
  contig_coeffs,
  contig_phi4,
  contig_psi_cd_lower,
  contig_psi_gh_upper,
  inverse_op,
};

inline constexpr std::pair<IdentityId, std::string_view> kIdentityNames[] = {
    {IdentityId::lemma1, "lemma1"},
    {IdentityId::lemma2, "lemma2"},
    {IdentityId::lemma3, "lemma3"},
    {IdentityId::theorem1, "theorem1"},
    {IdentityId::aw_recurrence, "aw_recurrence"},
    {IdentityId::assoc_recurrence, "assoc_recurrence"},
    {IdentityId::rep_consistency, "rep_consistency"},
    {IdentityId::alpha_zero_reduction, "alpha_zero_reduction"},
    {IdentityId::diagonal_proportionality, "diagonal_proportionality"},
    {IdentityId::rs_solutions, "rs_solutions"},
    {IdentityId::aw_eigen, "aw_eigen"},
    {IdentityId::orthogonality, "orthogonality"},
    {IdentityId::contig_coeffs, "contig_coeffs"},
    {IdentityId::contig_phi4, "contig_phi4"},
    {IdentityId::contig_psi_cd_lower, "contig_psi_cd_lower"},
    {IdentityId::contig_psi_gh_upper, "contig_psi_gh_upper"},
    {IdentityId::inverse_op, "inverse_op"},
};

inline std::string to_string(IdentityId id) {
  for (const auto& [k, name] : kIdentityNames)
    if (k == id) return std::string(name);
  return "unknown";
}

inline std::optional<IdentityId> identity_from_string(std::string_view s) {
  for (const auto& [k, name] : kIdentityNames)
    if (name == s) return k;
  return std::nullopt;
}

struct SampleRecord {
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, std::string>> labels;
  double residual = 0.0;
  std::string error;  // non-empty when the sample could not be evaluated

  SampleRecord& param(std::string key, double v) {
    params.emplace_back(std::move(key), v);
    return *this;
  }
  SampleRecord& label(std::string key, std::string v) {
    labels.emplace_back(std::move(key), std::move(v));
    return *this;
  }
};

struct VerificationReport {
  IdentityId identity = IdentityId::lemma1;
  std::vector<SampleRecord> samples;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double runtime_ms = 0.0;

  /// Recomputes max_residual and passed from the samples.
  void finalize() {
    max_residual = 0.0;
    for (const SampleRecord& s : samples) {
      const double r = s.error.empty() ? s.residual : std::numeric_limits<double>::infinity();
      max_residual = std::isnan(r) ? std::numeric_limits<double>::infinity()
                                   : std::max(max_residual, r);
    }
    passed = !samples.empty() && max_residual < tolerance;
  }

  bool sample_passed(const SampleRecord& s) const { return s.error.empty() && s.residual < tolerance; }
};

enum class OutputFormat { json_lines, csv, pretty };

inline nlohmann::ordered_json sample_json(const VerificationReport& r, std::size_t index) {
  const SampleRecord& s = r.samples.at(index);
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.params) params[k] = v;
  for (const auto& [k, v] : s.labels) params[k] = v;
  nlohmann::ordered_json j;
  j["identity"] = to_string(r.identity);
  j["index"] = index;
  j["params"] = std::move(params);
  if (s.error.empty()) {
    j["residual"] = s.residual;
  } else {
    j["residual"] = nullptr;
    j["error"] = s.error;
  }
  j["tol"] = r.tolerance;
  j["pass"] = r.sample_passed(s);
  return j;
}

inline nlohmann::ordered_json summary_json(const VerificationReport& r, bool timing) {
  nlohmann::ordered_json j;
  j["identity"] = to_string(r.identity);
  j["summary"] = true;
  if (std::isfinite(r.max_residual)) {
    j["max_residual"] = r.max_residual;
  } else {
    j["max_residual"] = nullptr;
  }
  j["tol"] = r.tolerance;
  j["trials"] = r.samples.size();
  j["passed"] = r.passed;
  if (timing) j["runtime_ms"] = r.runtime_ms;
  return j;
}

namespace detail {

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline std::string param_string(const SampleRecord& s) {
  std::string out;
  for (const auto& [k, v] : s.params) {
    if (!out.empty()) out += ';';
    out += k + '=' + format_double(v);
  }
  for (const auto& [k, v] : s.labels) {
    if (!out.empty()) out += ';';
    out += k + '=' + v;
  }
  return out;
}

}  // namespace detail

inline void write_csv_header(std::ostream& os) {
  os << "identity,index,residual,tol,pass,params,error\n";
}

inline void write_report(std::ostream& os, const VerificationReport& r, OutputFormat fmt,
                         bool timing, bool header = true) {
  switch (fmt) {
    case OutputFormat::json_lines:
      for (std::size_t i = 0; i < r.samples.size(); ++i) os << sample_json(r, i).dump() << '\n';
      os << summary_json(r, timing).dump() << '\n';
      break;
    case OutputFormat::csv:
      if (header) write_csv_header(os);
      for (std::size_t i = 0; i < r.samples.size(); ++i) {
        const SampleRecord& s = r.samples[i];
        os << to_string(r.identity) << ',' << i << ','
           << (s.error.empty() ? detail::format_double(s.residual) : "") << ','
           << detail::format_double(r.tolerance) << ',' << (r.sample_passed(s) ? "true" : "false")
           << ',' << '"' << detail::param_string(s) << '"' << ',' << '"' << s.error << '"' << '\n';
      }
      break;
    case OutputFormat::pretty: {
      for (std::size_t i = 0; i < r.samples.size(); ++i) {
        const SampleRecord& s = r.samples[i];
        os << "  [" << (r.sample_passed(s) ? "ok  " : "FAIL") << "] #" << i << "  ";
        if (s.error.empty()) {
          os << "residual " << std::setprecision(3) << std::scientific << s.residual
             << std::defaultfloat;
        } else {
          os << "error: " << s.error;
        }
        os << "  (" << detail::param_string(s) << ")\n";
      }
      os << to_string(r.identity) << ": " << (r.passed ? "PASS" : "FAIL") << "  max residual "
         << std::setprecision(3) << std::scientific << r.max_residual << " (tol " << r.tolerance
         << ")" << std::defaultfloat << "  samples " << r.samples.size();
      if (timing) os << "  " << std::fixed << std::setprecision(1) << r.runtime_ms << " ms" << std::defaultfloat;
      os << '\n';
      break;
    }
  }
}

}  // namespace awq
