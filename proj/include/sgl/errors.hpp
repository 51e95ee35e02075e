#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgl {

// Raised when the caller passes parameters outside the documented ranges.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation needed vertices beyond the truncation frontier.
class TruncationTooSmall : public std::runtime_error {
 public:
  TruncationTooSmall(const std::string& what, double required_radius, double trusted_radius,
                     std::size_t suggested_size)
      : std::runtime_error(what),
        required_radius_(required_radius),
        trusted_radius_(trusted_radius),
        suggested_size_(suggested_size) {}

  double required_radius() const { return required_radius_; }
  double trusted_radius() const { return trusted_radius_; }
  // Rough truncation size (in frontier hops) that should make the request safe; 0 if unknown.
  std::size_t suggested_size() const { return suggested_size_; }

 private:
  double required_radius_;
  double trusted_radius_;
  std::size_t suggested_size_;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_value)
      : std::runtime_error(what), best_value_(best_value) {}
  double best_value() const { return best_value_; }

 private:
  double best_value_;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sgl
