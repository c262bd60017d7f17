#pragma once

#include <stdexcept>
#include <string>

namespace debranges {

// Malformed user input: bad files, fields, or arguments. CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation could not produce a trustworthy result. CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested phase value lies outside the attainable range of the phase.
class PhaseRangeError : public NumericalError {
 public:
  PhaseRangeError(const std::string& what, double inf, double sup)
      : NumericalError(what), inf_(inf), sup_(sup) {}
  double inf() const noexcept { return inf_; }
  double sup() const noexcept { return sup_; }

 private:
  double inf_;
  double sup_;
};

class IterationLimitError : public NumericalError {
 public:
  IterationLimitError(const std::string& what, double lo, double hi)
      : NumericalError(what), lo_(lo), hi_(hi) {}
  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

class IllConditionedError : public NumericalError {
 public:
  IllConditionedError(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace debranges
