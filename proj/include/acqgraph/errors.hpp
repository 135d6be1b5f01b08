#pragma once

#include <stdexcept>
#include <string>

namespace acqgraph {

// Bad or inconsistent input data (CLI exit code 2).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A metric with no defined value on the given input. Callers that assemble
// reports catch this and emit null instead of a number.
class UndefinedValueError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative solver did not converge (CLI exit code 3).
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, int iterations)
        : std::runtime_error(what), iterations_(iterations) {}

    int iterations() const noexcept { return iterations_; }

private:
    int iterations_;
};

}  // namespace acqgraph
