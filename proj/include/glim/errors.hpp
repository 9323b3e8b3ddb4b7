#ifndef GLIM_ERRORS_HPP
#define GLIM_ERRORS_HPP

#include <stdexcept>

namespace glim {

// Bad inputs, bad flags, malformed files. The CLI maps this to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A structural assertion embedded in a pipeline did not hold. Exit code 3.
struct AssertionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reading or writing a file failed. Exit code 4.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A randomized construction exhausted its attempt budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace glim

#endif
