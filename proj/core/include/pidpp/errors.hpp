#pragma once

#include <stdexcept>
#include <string>

namespace pidpp {

// Base of every typed computation error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Brute-force enumeration over a size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// FPT work estimate or live table size over the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Symmetric PSD requirement violated (non-symmetric input or negative pivot).
class NotPsdError : public Error {
 public:
  using Error::Error;
};

// A negative principal minor where fractional powers are required.
class NegativeMinorError : public Error {
 public:
  using Error::Error;
};

class DecompositionError : public Error {
 public:
  using Error::Error;
};

// Conditioning event of zero mass, or a probability outside [0, 1].
class ProbabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace pidpp
