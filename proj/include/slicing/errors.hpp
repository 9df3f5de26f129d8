#pragma once

#include <stdexcept>
#include <string>

namespace slicing {

// Error classes map 1:1 onto CLI exit codes (see tools/main.cpp).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A constraint cannot be met (rate target with zero gains, outage target
// beyond the tabulated power range, latency budget violated, ...).
struct infeasible_error : std::runtime_error {
    explicit infeasible_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (non-convergence); carries the offending bracket in msg.
struct solver_error : std::runtime_error {
    explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace slicing
