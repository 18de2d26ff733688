#pragma once

#include <stdexcept>
#include <string>

namespace gnewton {

enum class ErrorKind {
  DimensionMismatch,
  SingularInput,
  NotPositiveDefinite,
  ConvergenceFailure,
  BadRank,
  NotAProjector,
  NotSymmetric,
  NotLagrangian,
  NotAFrame,
  SpectralOverlap,
  SingularOperator,
  NoConvergence,
  InsufficientData,
  InvalidConfig,
  InvalidInput,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// min_gap is min |lambda_i - mu_j| (Sylvester) or min |lambda_i + lambda_j| (Lyapunov).
struct SpectralGapReport {
  double min_gap = 0.0;
  double threshold = 0.0;
  bool solvable = false;
};

class SpectralOverlapError : public Error {
 public:
  SpectralOverlapError(const SpectralGapReport& r, const std::string& what)
      : Error(ErrorKind::SpectralOverlap, what), report_(r) {}
  const SpectralGapReport& report() const { return report_; }

 private:
  SpectralGapReport report_;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(double last_change, int sweeps, const std::string& what)
      : Error(ErrorKind::NoConvergence, what), last_change_(last_change), sweeps_(sweeps) {}
  double last_change() const { return last_change_; }
  int sweeps() const { return sweeps_; }

 private:
  double last_change_;
  int sweeps_;
};

}  // namespace gnewton
