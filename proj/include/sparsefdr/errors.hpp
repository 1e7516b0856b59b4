#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparsefdr {

// Bad experiment/CLI configuration, detected before any compute starts.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exhaustive search would score more subsets than its guard allows.
struct BudgetError : std::runtime_error {
    BudgetError(const std::string& msg, std::size_t required)
        : std::runtime_error(msg), required_budget(required) {}
    std::size_t required_budget;
};

// A design submatrix has deficient column rank.
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sweep ended with too few usable points for a log-log fit.
struct FitDegenerateError : std::runtime_error {
    FitDegenerateError(const std::string& msg, std::string table)
        : std::runtime_error(msg), raw_table(std::move(table)) {}
    std::string raw_table;
};

// Unreadable or ill-formed data file; message carries the line number.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sparsefdr
