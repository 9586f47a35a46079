#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace snlw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad grid, negative time, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The Picard iteration for one time step failed to contract.
class NonConvergence : public Error {
 public:
  NonConvergence(double t, int iterations, double increment)
      : Error("Picard iteration did not converge at t=" + std::to_string(t) +
              " after " + std::to_string(iterations) +
              " iterations (last increment " + std::to_string(increment) + ")"),
        t_(t), iterations_(iterations), increment_(increment) {}

  double time() const { return t_; }
  int iterations() const { return iterations_; }
  double increment() const { return increment_; }

 private:
  double t_;
  int iterations_;
  double increment_;
};

/// The H^s x H^{s-1} norm of (v, v_t) crossed the blow-up threshold.
class BlowUp : public Error {
 public:
  BlowUp(double t, double norm, double threshold)
      : Error("blow-up at t=" + std::to_string(t) + ": norm " + std::to_string(norm) +
              " exceeds threshold " + std::to_string(threshold)),
        t_(t), norm_(norm) {}

  double time() const { return t_; }
  double norm() const { return norm_; }

 private:
  double t_;
  double norm_;
};

/// The (s, alpha, beta) window admits no growing-N schedule.
class InfeasibleSchedule : public Error {
 public:
  using Error::Error;
};

/// Configuration text failed validation; carries every violation found.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

}  // namespace snlw
