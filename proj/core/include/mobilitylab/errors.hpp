#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mobilitylab {

/// One failed invariant, keyed by the configuration field name.
struct Violation {
  std::string field;
  std::string message;

  bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation };

  ConfigError(Kind kind, const std::string& what, ValidationReport report = {})
      : std::runtime_error(what), kind_(kind), report_(std::move(report)) {}

  Kind kind() const noexcept { return kind_; }
  const ValidationReport& report() const noexcept { return report_; }

 private:
  Kind kind_;
  ValidationReport report_;
};

// The requested operating point cannot be held by the actuators
// (rotor thrust above its limit, trim not attainable).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative solver hit its iteration cap.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mobilitylab
