#pragma once

#include <stdexcept>
#include <string>

namespace eigenwise {

// Exit-code categories used by the command-line tool:
//   0 success, 2 configuration, 3 numeric degeneracy, 4 I/O.
enum class ErrorCategory { config = 2, numeric = 3, io = 4 };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory cat, const std::string& msg)
      : std::runtime_error(msg), cat_(cat) {}
  ErrorCategory category() const { return cat_; }
  int exit_code() const { return static_cast<int>(cat_); }

private:
  ErrorCategory cat_;
};

// Bad or inconsistent user-supplied parameters.
struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error(ErrorCategory::config, m) {}
};

// Dimension mismatches between arguments.
struct ShapeError : Error {
  explicit ShapeError(const std::string& m) : Error(ErrorCategory::numeric, m) {}
};

// Requested more positive/negative eigenpairs than the matrix supports.
struct RankError : Error {
  explicit RankError(const std::string& m) : Error(ErrorCategory::numeric, m) {}
};

// An eigenvalue separation fell below the relative floor.
struct EigengapError : Error {
  explicit EigengapError(const std::string& m) : Error(ErrorCategory::numeric, m) {}
};

// A plug-in scale or other pivotal quantity vanished.
struct DegenerateError : Error {
  explicit DegenerateError(const std::string& m) : Error(ErrorCategory::numeric, m) {}
};

// Input outside the mathematical domain of an operation.
struct DomainError : Error {
  explicit DomainError(const std::string& m) : Error(ErrorCategory::numeric, m) {}
};

// Noise specification lacks the closed-form moments an operation needs.
struct MomentUnavailableError : Error {
  explicit MomentUnavailableError(const std::string& m) : Error(ErrorCategory::numeric, m) {}
};

// Too many replicates/draws were dropped for the result to be trusted.
struct QualityError : Error {
  explicit QualityError(const std::string& m) : Error(ErrorCategory::numeric, m) {}
};

// Iterative eigensolver failed to converge within its sweep cap.
struct NonConvergenceError : Error {
  explicit NonConvergenceError(const std::string& m) : Error(ErrorCategory::numeric, m) {}
};

// Malformed input file.
struct FormatError : Error {
  explicit FormatError(const std::string& m) : Error(ErrorCategory::io, m) {}
};

// Filesystem failure (missing file, unwritable path).
struct IoError : Error {
  explicit IoError(const std::string& m) : Error(ErrorCategory::io, m) {}
};

}  // namespace eigenwise
