#pragma once

#include <stdexcept>
#include <string>

namespace muntz {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the declared domain (pole, strip violation, range guard).
class domain_error : public error {
public:
  explicit domain_error(const std::string& msg) : error(msg) {}
};

/// An iterative scheme failed to reach the requested tolerance.
class convergence_error : public error {
public:
  convergence_error(const std::string& msg, double achieved)
      : error(msg), achieved_error(achieved) {}
  double achieved_error;
};

/// A test function does not satisfy the smoothness/decay hypothesis a
/// formula requires.
class class_violation : public error {
public:
  explicit class_violation(const std::string& msg) : error(msg) {}
};

} // namespace muntz
