#pragma once

#include <stdexcept>
#include <string>

namespace polylo {

// Shape or index mismatch in an argument (non-square, out of range, wrong length).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation is undefined for these inputs (d = 1 reducibility, division by zero, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An exact enumeration would exceed its configured cap; callers should switch to
// the sampled / Monte Carlo variant.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructive step failed because the input violates the hypothesis it needs.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed external input: JSON documents, command-line values.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace polylo
