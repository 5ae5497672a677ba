#pragma once

#include <stdexcept>

namespace hotk {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions or orders do not match.
class ShapeError : public Error {
public:
  using Error::Error;
};

// An argument value is outside its admissible range.
class ValueError : public Error {
public:
  using Error::Error;
};

// A structural precondition on the data is violated
// (block-circulant layout, facewise diagonality, ...).
class StructureError : public Error {
public:
  using Error::Error;
};

// A file does not conform to its on-disk format.
class FormatError : public Error {
public:
  using Error::Error;
};

// A numerical check failed (transform validation, residual imaginary
// part too large, divergence).
class NumericError : public Error {
public:
  using Error::Error;
};

}  // namespace hotk
