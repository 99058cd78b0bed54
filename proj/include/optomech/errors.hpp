#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace optomech {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical parameters that violate a hard constraint (negative mass, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Configuration document that does not match the schema. `path()` is a
/// JSON pointer to the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Self-consistent displacement iteration ran out of iterations.
class NonConvergence : public Error {
 public:
  NonConvergence(double last_q, double residual, int iterations)
      : Error("mirror displacement fixed point did not converge after " +
              std::to_string(iterations) + " iterations (q = " +
              std::to_string(last_q) + ", residual = " +
              std::to_string(residual) + ")"),
        last_q_(last_q),
        residual_(residual),
        iterations_(iterations) {}

  double last_iterate() const noexcept { return last_q_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_q_;
  double residual_;
  int iterations_;
};

class EigenSolverFailure : public Error {
 public:
  using Error::Error;
};

/// (-iωI - M) is numerically singular at the requested Fourier frequency.
class SingularAtFrequency : public Error {
 public:
  explicit SingularAtFrequency(double omega)
      : Error("resolvent is singular at omega = " + std::to_string(omega) +
              " rad/s"),
        omega_(omega) {}
  double omega() const noexcept { return omega_; }

 private:
  double omega_;
};

class UnstableSystem : public Error {
 public:
  using Error::Error;
};

class SingularLyapunov : public Error {
 public:
  using Error::Error;
};

/// A stochastic trajectory diverged mid-run.
class InstabilityDetected : public Error {
 public:
  InstabilityDetected(double time, double norm)
      : Error("trajectory diverged at t = " + std::to_string(time) +
              " s (|u|_inf = " + std::to_string(norm) + ")"),
        time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace optomech
