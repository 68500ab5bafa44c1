#pragma once

#include <stdexcept>
#include <string>

namespace cqa {

// n * c must be even: every edge consumes two stubs.
struct OddDegreeSumError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// degree outside [1, n): no simple c-regular graph exists.
struct InfeasibleDegreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Pairing-model rejection sampling hit the restart cap.
struct GenerationStalledError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotConvergedError : std::runtime_error {
    int iterations;
    double best_residual;
    NotConvergedError(int iters, double residual)
        : std::runtime_error("eigensolver did not converge after " + std::to_string(iters) +
                             " iterations (best residual " + std::to_string(residual) + ")"),
          iterations(iters),
          best_residual(residual) {}
};

struct NonFiniteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cqa
