#pragma once

#include <stdexcept>
#include <string>

namespace sawtooth {

// Dimension exceeds the configured dense-solver limit; callers should fall
// back to the Krylov propagator.
class capacity_error : public std::runtime_error {
public:
  explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested a particle-hole projection of an operator that does not commute
// with the complement map.
class symmetry_violation_error : public std::runtime_error {
public:
  explicit symmetry_violation_error(const std::string& msg)
      : std::runtime_error(msg) {}
};

class convergence_error : public std::runtime_error {
public:
  explicit convergence_error(const std::string& msg)
      : std::runtime_error(msg) {}
};

class empty_window_error : public std::runtime_error {
public:
  explicit empty_window_error(const std::string& msg)
      : std::runtime_error(msg) {}
};

class undefined_result_error : public std::runtime_error {
public:
  explicit undefined_result_error(const std::string& msg)
      : std::runtime_error(msg) {}
};

class fit_failure_error : public std::runtime_error {
public:
  explicit fit_failure_error(const std::string& msg)
      : std::runtime_error(msg) {}
};

class unsupported_size_error : public std::invalid_argument {
public:
  explicit unsupported_size_error(const std::string& msg)
      : std::invalid_argument(msg) {}
};

}  // namespace sawtooth
