#pragma once

#include "nvi/operators.hpp"

#include <stdexcept>
#include <string>

namespace nvi {

/// Runtime failure inside an iteration (as opposed to bad input).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonFiniteIterate : public SolverError {
public:
    NonFiniteIterate(const std::string& what, long iteration)
        : SolverError(what + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    long iteration() const { return iteration_; }

private:
    long iteration_;
};

}  // namespace nvi
