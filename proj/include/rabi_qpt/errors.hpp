#pragma once

#include <stdexcept>
#include <string>

namespace rabi_qpt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The quadratic potential of mode b is inverted for this ancilla number:
/// 1 + alpha*chi^2 - 4 n g0/omega <= 0.
class FrameUndefined : public Error {
 public:
  using Error::Error;
};

class NoCriticalPoint : public Error {
 public:
  using Error::Error;
};

/// An analytic constructor was asked for a phase the parameters are not in.
class WrongPhase : public Error {
 public:
  using Error::Error;
};

class ZeroNorm : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// The projected parity matrix of a doublet is not close to diag(+1, -1).
class ParityMixed : public Error {
 public:
  using Error::Error;
};

/// Raised only by callers that opt into strict truncation checks; the
/// builders themselves report truncation through TruncationReport.
class TruncationWarning : public Error {
 public:
  using Error::Error;
};

}  // namespace rabi_qpt
