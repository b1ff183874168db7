#pragma once

#include <stdexcept>
#include <string>

namespace mvd {

// Error taxonomy shared by the library and the CLI exit-code mapping:
// input errors (malformed or out-of-range data), resource errors
// (enumeration budget exceeded), contract errors (a precondition that
// callers promised to uphold is violated), and construction failures
// (randomized construction exhausted its retry budget).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : Error {
    using Error::Error;
};

struct ResourceError : Error {
    using Error::Error;
};

struct ContractError : Error {
    using Error::Error;
};

struct ConstructionError : Error {
    ConstructionError(const std::string& what, int attempts_)
        : Error(what), attempts(attempts_) {}
    int attempts;
};

}  // namespace mvd
