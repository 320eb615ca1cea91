#pragma once

#include <stdexcept>
#include <string>

namespace fcalc {

/// Malformed input: bad shapes, ill-defined maps, non-composable sequences,
/// unparsable files. The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A truncated computation ran out of levels before it could say anything.
class WindowError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace fcalc
