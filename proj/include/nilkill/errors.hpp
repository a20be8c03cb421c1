#pragma once

#include <stdexcept>
#include <string>

namespace nilkill {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rank decision could not be made: the gap between retained and discarded
// singular values is below the safety margin.
class NumericalRankFailure : public Error {
 public:
  using Error::Error;
};

class AlgebraAbelian : public Error {
 public:
  using Error::Error;
};

class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

class NotSkew : public Error {
 public:
  using Error::Error;
};

class DecompositionAmbiguous : public Error {
 public:
  using Error::Error;
};

class InternalInvariantViolation : public Error {
 public:
  using Error::Error;
};

class NotComplexStructure : public Error {
 public:
  using Error::Error;
};

class TrivialSubrepresentation : public Error {
 public:
  using Error::Error;
};

class NotAdInvariant : public Error {
 public:
  using Error::Error;
};

class EmptySum : public Error {
 public:
  using Error::Error;
};

// Malformed input: bad JSON, inconsistent sizes, unknown catalog entry.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A file or document that cannot be read as the expected format.
class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// The algebra does not satisfy the invariants required by an operation.
class InvalidAlgebra : public Error {
 public:
  using Error::Error;
};

}  // namespace nilkill
