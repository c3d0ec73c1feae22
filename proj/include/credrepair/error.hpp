#pragma once

#include <stdexcept>
#include <string>

namespace credrepair {

// File could not be read or has malformed syntax.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input was syntactically fine but violates a documented invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace credrepair
