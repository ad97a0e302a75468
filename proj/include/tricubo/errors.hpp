#pragma once

#include <stdexcept>
#include <string>

namespace tricubo {

// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (grid JSON, field CSV, cubulation cache).
class FormatError : public Error {
public:
  using Error::Error;
};

// Grid data that violates the topology contract.
class GridError : public Error {
public:
  using Error::Error;
};

// Cubulation failures: edge-color or coordinate conflicts, negative
// post-shift coordinates, caches that do not verify against their grid.
class CubulationError : public Error {
public:
  using Error::Error;
};

// An active cell has no cubical coordinate (iteration radius too small).
class CoverageError : public Error {
public:
  using Error::Error;
};

}  // namespace tricubo
