#pragma once

#include <stdexcept>
#include <string>

namespace poolopt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed MOOT file: missing header, no objective columns, bad cells.
struct ParseError : Error {
    using Error::Error;
};

// A reveal was requested on a pool whose budget is already spent.
struct BudgetExhausted : Error {
    using Error::Error;
};

}  // namespace poolopt
