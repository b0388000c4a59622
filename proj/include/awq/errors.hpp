#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace awq {

enum class ErrorKind {
  invalid_context,
  budget_exceeded,
  non_convergent,
  denominator_pole,
  degenerate_denominator,
  degenerate_lattice_point,
  parameter_out_of_range,
  singular_system,
  quadrature_failure,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_context: return "invalid-context";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::non_convergent: return "non-convergent";
    case ErrorKind::denominator_pole: return "denominator-pole";
    case ErrorKind::degenerate_denominator: return "degenerate-denominator";
    case ErrorKind::degenerate_lattice_point: return "degenerate-lattice-point";
    case ErrorKind::parameter_out_of_range: return "parameter-out-of-range";
    case ErrorKind::singular_system: return "singular-system";
    case ErrorKind::quadrature_failure: return "quadrature-failure";
  }
  return "unknown";
}

/// Every numerical failure in the library is reported through this type.
class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace awq
