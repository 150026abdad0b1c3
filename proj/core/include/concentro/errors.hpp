#pragma once

#include <stdexcept>
#include <string>

namespace concentro {

// Argument outside the documented range (d > 6, p < 2, alpha ∉ [1,2], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Mismatched orders, dimensions or vector lengths.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed request outside what is implemented (e.g. mixed norms for d > 3).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed input files or text syntax.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace concentro
