#pragma once

#include <stdexcept>
#include <string>

namespace ifnet {

// Base of every error raised by the library. The CLI maps each subclass to
// an exit code (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Network parameters violate the model's standing assumptions.
class RejectConfig : public Error {
 public:
  using Error::Error;
};

// Malformed configuration file; message carries line or field context.
class ParseError : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

// H3/H4, inhibitory presence, or the synchronization size bound fails.
class HypothesisViolated : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class NoFixedPoint : public Error {
 public:
  using Error::Error;
};

// Banach refinement of a cycle candidate failed to contract.
class NumericalStall : public Error {
 public:
  using Error::Error;
};

}  // namespace ifnet
