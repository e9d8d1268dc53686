#pragma once

#include <stdexcept>
#include <string>

namespace qma {

// Root of every error the library raises. The CLI maps ConstructionError
// subclasses to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class ForbiddenParameter : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

class LegRangeError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NotSkewInvertible : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

class NotStrict : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

class NotBmwType : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

class NotCompatible : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

class ConstructionInvalid : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

class TowerMismatch : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

class HeightNotFound : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

class SingularContraction : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

class NotFlipPair : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

class ExchangeNotInvertible : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

}  // namespace qma
