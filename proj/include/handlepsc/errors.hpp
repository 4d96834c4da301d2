#pragma once

#include <stdexcept>
#include <string>

namespace handlepsc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (parameter out of range,
/// malformed ladder, degenerate bracket, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A quadrature sample came back non-finite.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// A ratio denominator underflowed to zero.
class DivisionBlowUp : public Error {
 public:
  using Error::Error;
};

/// Point (or finite-difference stencil) left the region where the chart
/// is defined, i.e. r(theta, t) <= 0.
class ChartError : public Error {
 public:
  using Error::Error;
};

/// Metric could not be inverted.
class SingularMetricError : public Error {
 public:
  using Error::Error;
};

/// Text input (parameter file, link configuration) could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace handlepsc
