#pragma once

#include <stdexcept>
#include <string>

namespace lt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or size of an argument is incompatible with the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Wrong number of multilinear arguments.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// The sequence cannot supply a requested witness (custom sequence
/// without a provider, or unsupported composition).
class UnsupportedSequenceError : public Error {
 public:
  using Error::Error;
};

/// The sequence failed (O1) at the requested level, so the adjoint of a
/// decomposition is not well defined.
class InvolutionUnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A map given by a Choi matrix is not completely positive.
class NotCpError : public Error {
 public:
  using Error::Error;
};

/// A gating condition (verified axiom, self-adjointness, PSD input) does
/// not hold for the supplied arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; message carries the location when known.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lt
