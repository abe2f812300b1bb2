#pragma once

#include <stdexcept>
#include <string>

namespace tokeval {

/// Bad user input: missing files, malformed records, unknown symbols.
/// The CLI maps this to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A broken internal invariant. The CLI maps this to exit code 2.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace tokeval
