#pragma once

#include <stdexcept>
#include <string>

namespace oilrisk {

// File/line level problems while reading external inputs.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally valid input whose content violates a contract
// (duplicate months, empty joins, misaligned series, ...).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Run configuration problems (missing keys, bad values, unknown names).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative solver failed to converge; carries the iteration trace.
struct SolverError : std::runtime_error {
    SolverError(const std::string& what, int iterations_, double last_gap_)
        : std::runtime_error(what), iterations(iterations_), last_gap(last_gap_) {}
    int iterations = 0;
    double last_gap = 0.0;
};

// Too many bootstrap replicates were unusable for inference.
struct InferenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pipeline stage failure wrapper: remembers which stage aborted the run.
struct StageError : std::runtime_error {
    StageError(const std::string& stage_, const std::string& cause)
        : std::runtime_error(stage_ + ": " + cause), stage(stage_) {}
    std::string stage;
};

}  // namespace oilrisk
