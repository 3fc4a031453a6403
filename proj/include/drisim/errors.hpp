#pragma once

#include <stdexcept>
#include <string>

namespace drisim {

// Bad inputs: malformed config text, violated type invariants, impossible geometry.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Well-formed inputs the numerics cannot handle: non-convergence, unbounded results.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace drisim
