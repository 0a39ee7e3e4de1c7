#pragma once

#include <stdexcept>
#include <string>

namespace dcres {

// Invalid scenario/sweep input: bad key, out-of-range value, malformed
// hierarchy string, insufficient services. CLI maps this to exit code 2.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem failure while emitting results. CLI maps this to exit code 3.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dcres
