#pragma once

#include <stdexcept>
#include <string>

namespace etcsim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid graph construction input (duplicate edges, bad weights, ...).
struct GraphError : Error {
    using Error::Error;
};

// Graph fails a connectivity precondition.
struct ConnectivityError : Error {
    using Error::Error;
};

// Invalid scenario / trigger / design configuration.
struct ConfigError : Error {
    using Error::Error;
};

// Numerical failure at runtime: divergence, solver breakdown, nonfinite state.
struct NumericsError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace etcsim
