#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace emx {

/// Bad user input: malformed config, invalid parameter, mismatched grids.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// The time integration produced NaN/Inf or the CFL check failed mid-run.
/// Carries the time of failure and the recent (t, max|u|) trace.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(const std::string& what, double t,
              std::vector<std::pair<double, double>> trace)
      : std::runtime_error(what), t_(t), trace_(std::move(trace)) {}
  double t() const { return t_; }
  const std::vector<std::pair<double, double>>& norm_trace() const { return trace_; }

 private:
  double t_;
  std::vector<std::pair<double, double>> trace_;
};

/// Filesystem failures, surfaced with the offending path.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace emx
