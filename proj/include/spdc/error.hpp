#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

// Base class for every failure raised by the library. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed coefficient database or other structured input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Wavelength or temperature outside a model's declared validity range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Root finder could not isolate a unique solution.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Spectral grid too small or otherwise unusable for the requested operation.
class GridError : public Error {
 public:
  using Error::Error;
};

}  // namespace spdc
