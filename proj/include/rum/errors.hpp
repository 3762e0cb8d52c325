#ifndef RUM_ERRORS_HPP
#define RUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rum {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated operation precondition (bad level, support violation, pair not
// separable, ...). The CLI maps these to exit code 2.
struct DomainError : Error {
  using Error::Error;
};

// Universe or enumeration size limit exceeded.
struct CapExceeded : DomainError {
  using DomainError::DomainError;
};

// Malformed input file or string.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace rum

#endif
