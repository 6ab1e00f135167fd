#pragma once

#include <stdexcept>

namespace cutpoint {

// Malformed input: files, schemas, option values. CLI maps this to exit code 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An estimation or solver routine cannot complete. CLI maps this to exit code 3.
struct ComputeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cutpoint
