#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bbkit {

// Precondition violations on mathematical domains (zero scalar, index out of
// range, point outside a chart's section domain, ...).
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Dimension / length mismatches between containers that must agree.
class ShapeError : public std::runtime_error {
public:
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// A generator fails to be semi-invariant for the given weights.
class EquivarianceError : public std::runtime_error {
public:
  EquivarianceError(const std::string& what, int generator_index)
      : std::runtime_error(what), generator_index(generator_index) {}
  int generator_index;  // 1-based position of the offending generator
};

// NaN or overflow produced by a numerical routine.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Text input rejected; position is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

}  // namespace bbkit
