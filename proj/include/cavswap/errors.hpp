#pragma once

#include <stdexcept>
#include <string>

namespace cavswap {

// Bad user input: malformed JSON, invalid parameter values, non-unitary networks.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The residual-population criterion could not be met within the maximum window.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The adaptive stepper ran out of step-size or step budget.
struct StepRejection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Both emission probabilities are numerically zero; normalized waveforms are undefined.
struct EmissionZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No term of the superposition matches the detector click pattern.
struct PostSelectionImpossible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cavswap
