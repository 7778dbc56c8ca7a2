#ifndef MINCORR_ERRORS_HPP
#define MINCORR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mincorr {

// Inadmissible distribution parameter, or an argument outside an operation's
// domain (u outside (0,1), wrong vector length, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A target correlation outside the attainable range of the marginals.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Correlation structure the generators cannot realize: matrix not PSD, sign
// or zero pattern without a product factorization, implied factor magnitude
// of 1 or more, or an entry below the antithetic bound.
class FeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FactorizationError : public FeasibilityError {
 public:
  using FeasibilityError::FeasibilityError;
};

// Quadrature could not meet its tolerance; carries the best estimate.
class NumericalAccuracyError : public std::runtime_error {
 public:
  NumericalAccuracyError(const std::string& what, double estimate,
                         double error_bound)
      : std::runtime_error(what),
        estimate_(estimate),
        error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

// Sample statistics undefined for the input (zero variance, length < 2).
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mincorr

#endif  // MINCORR_ERRORS_HPP
