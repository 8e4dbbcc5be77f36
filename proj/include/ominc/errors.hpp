#pragma once

#include <stdexcept>
#include <string>

namespace ominc {

// Bad user input (config file or programmatic parameters).  `field` carries a
// dotted path like "[drive].g" so the CLI can point at the offending key.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

// A requested quantity is undefined at the given parameters (e.g. the
// force-equivalent PSD at zero coupling, or a threshold at gamma = 0).
class SingularError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Adaptive integration failed to reach the requested tolerance.  Carries the
// best partial answer and its error estimate so callers can report context.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double partial, double error,
                  long evaluations)
      : std::runtime_error(what), partial_(partial), error_(error),
        evaluations_(evaluations) {}
  double partial() const { return partial_; }
  double error() const { return error_; }
  long evaluations() const { return evaluations_; }

private:
  double partial_;
  double error_;
  long evaluations_;
};

} // namespace ominc
