#pragma once

#include <stdexcept>
#include <string>

namespace gradcat {

// Every failure raised by the library derives from Error. The CLI maps the
// subclasses onto process exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (non-parallel pair, foreign
// element, incompatible cone, ...).
class ContractViolation : public Error {
public:
  using Error::Error;
};

// An enumeration would exceed the configured instance-count guard.
class ResourceError : public Error {
public:
  ResourceError(const std::string& what, unsigned long long bound)
      : Error(what + " (guard limit " + std::to_string(bound) + ")"), bound_(bound) {}
  unsigned long long bound() const noexcept { return bound_; }

private:
  unsigned long long bound_;
};

// A verification whose outcome is guaranteed by a theorem came out the other
// way. Always a bug in the engine or a mis-specified input.
class TheoremViolation : public Error {
public:
  using Error::Error;
};

class ModeNotSound : public Error {
public:
  using Error::Error;
};

class NoSplitting : public Error {
public:
  using Error::Error;
};

class NotExponential : public Error {
public:
  using Error::Error;
};

}  // namespace gradcat
