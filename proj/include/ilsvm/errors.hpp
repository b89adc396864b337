#pragma once

#include <stdexcept>
#include <string>

namespace ilsvm {

/// Malformed input, invalid dataset invariants, or an unusable fold count.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The dual solver did not reach the requested KKT tolerance.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace ilsvm
