#pragma once

#include <stdexcept>
#include <string>

namespace gwfb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input files (edge lists, configs, signals).
struct ParseError : Error {
    using Error::Error;
};

// Structural violations: negative weights, self-loops, disconnected graphs.
struct ValidationError : Error {
    using Error::Error;
};

// The constraint set of a design program is empty for the given (r, s, J).
struct InfeasibleError : Error {
    using Error::Error;
};

// A submatrix required to have full column rank is rank deficient.
struct RankError : Error {
    using Error::Error;
};

// Eigensolver failure, singular synthesis system, and similar breakdowns.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace gwfb
