// Typed error hierarchy for the dispersia core.  The shared-library C API
// maps these onto stable integer status codes; inside the C++ core they are
// ordinary exceptions.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dsp {

enum class ErrorCode {
  invalid_argument,
  causality,
  quadrature,
  singular_system,
  separation,
  parse,
  validation,
  io,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Passivity gate violated: the static local-field denominator 1 - y/3 with
// y = eta*alpha(0)/eps0 would be non-positive.  Carries the offending y/3.
class CausalityViolation : public Error {
 public:
  CausalityViolation(double gate_value, const std::string& msg)
      : Error(ErrorCode::causality, msg), gate_value_(gate_value) {}
  double gate_value() const noexcept { return gate_value_; }

 private:
  double gate_value_;
};

// An integral failed to reach the requested tolerance; carries the error
// estimate that was achieved.  Most numerical paths prefer returning a
// `converged = false` flag; this exception is for contexts where no partial
// result can be represented.
class QuadratureError : public Error {
 public:
  QuadratureError(double achieved, const std::string& msg)
      : Error(ErrorCode::quadrature, msg), achieved_(achieved) {}
  double achieved_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Dense interaction solve hit a (near-)singular matrix, e.g. a resonant
// susceptibility.  Carries a reciprocal-condition estimate.
class SingularSystem : public Error {
 public:
  SingularSystem(double rcond, const std::string& msg)
      : Error(ErrorCode::singular_system, msg), rcond_(rcond) {}
  double rcond_estimate() const noexcept { return rcond_; }

 private:
  double rcond_;
};

// Two interacting bodies are closer than the voxel-scale validity limit
// (minimum separation: 3x the voxel pitch).
class SeparationTooSmall : public Error {
 public:
  explicit SeparationTooSmall(const std::string& msg)
      : Error(ErrorCode::separation, msg) {}
};

// Scenario text is not syntactically valid; carries 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : Error(ErrorCode::parse, msg), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Scenario is syntactically valid but semantically broken; carries the full
// list of problems, not just the first one found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues)
      : Error(ErrorCode::validation, join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "scenario validation failed:";
    for (const auto& e : v) {
      s += "\n  - ";
      s += e;
    }
    return s;
  }
  std::vector<std::string> issues_;
};

}  // namespace dsp
