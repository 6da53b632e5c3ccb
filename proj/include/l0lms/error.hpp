#pragma once

#include <stdexcept>
#include <string>

namespace l0lms {

// Every failure raised by the library derives from Error so callers can catch
// one type; the subclasses map onto the distinct failure modes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NumericInputError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Step size outside the mean-square stable interval (0, mu_max).
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// A closed form that is undefined for the given parameters (coincident
/// modes, vanishing constants).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Two evaluation routes of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& what, double slope)
      : Error(what), slope_(slope) {}
  double slope() const noexcept { return slope_; }

 private:
  double slope_;
};

}  // namespace l0lms
