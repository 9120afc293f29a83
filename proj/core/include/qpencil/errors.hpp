#pragma once

#include <stdexcept>
#include <string>

namespace qpencil {

/// Broad failure categories, used by the CLI to pick process exit codes.
enum class ErrorCategory {
  config,       ///< malformed input, bad dimensions, invalid arguments
  numerical,    ///< singular systems, B-norm collapse, degenerate pencils
  convergence,  ///< non-finite quantities produced by an evolution run
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

struct InvalidDimensionError : Error {
  explicit InvalidDimensionError(const std::string& what)
      : Error(ErrorCategory::config, what) {}
};

struct NonHermitianError : Error {
  explicit NonHermitianError(const std::string& what)
      : Error(ErrorCategory::config, what) {}
};

struct GateIndexError : Error {
  explicit GateIndexError(const std::string& what)
      : Error(ErrorCategory::config, what) {}
};

struct SingularBCollapseError : Error {
  explicit SingularBCollapseError(const std::string& what)
      : Error(ErrorCategory::numerical, what) {}
};

struct IllConditionedGammaError : Error {
  explicit IllConditionedGammaError(const std::string& what)
      : Error(ErrorCategory::numerical, what) {}
};

struct DivergenceError : Error {
  explicit DivergenceError(const std::string& what)
      : Error(ErrorCategory::convergence, what) {}
};

struct CannotBNormalizeError : Error {
  explicit CannotBNormalizeError(const std::string& what)
      : Error(ErrorCategory::numerical, what) {}
};

struct DegeneratePencilError : Error {
  explicit DegeneratePencilError(const std::string& what)
      : Error(ErrorCategory::numerical, what) {}
};

struct UndefinedClosedFormError : Error {
  explicit UndefinedClosedFormError(const std::string& what)
      : Error(ErrorCategory::numerical, what) {}
};

struct SingularFitError : Error {
  explicit SingularFitError(const std::string& what)
      : Error(ErrorCategory::numerical, what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what)
      : Error(ErrorCategory::config, what) {}
};

}  // namespace qpencil
