#pragma once

#include <stdexcept>
#include <string>

namespace furst {

// Raised when a result cannot be certified at the working precision or a
// requested bound diverges.  The CLI maps this to its numerical exit code.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace furst
