#pragma once

#include <stdexcept>

namespace amalgam {

// Argument outside the domain of an operation (negative time, out-of-grid
// frequency, box outside a sampled grid, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input whose effective support cannot be handled (unbounded, truncated by
// the grid) or a parameter combination the operation does not support.
class UnsupportedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidProfile : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A convolution would produce support outside the frequency grid.
class SupportOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace amalgam
