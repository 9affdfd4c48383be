// errors.hpp — Exception types for configuration and numerical failures

#pragma once

#include <stdexcept>
#include <string>

namespace usc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid parameters, malformed config files, grid misuse.
struct ConfigError : Error {
    using Error::Error;
};

// Numerical failures: eigensolver breakdown, step-size violations,
// trace/positivity drift beyond tolerance.
struct NumericsError : Error {
    using Error::Error;
};

// Quasi-steady-state iteration exceeded its time cap.
struct NonConvergence : NumericsError {
    using NumericsError::NumericsError;
};

// g2 normalization requested for an (effectively) undriven system.
struct DenominatorUnderflow : NumericsError {
    using NumericsError::NumericsError;
};

// Parity labels requested for a state that is not a parity eigenstate
// (mixing angle away from pi/2 with g > 0).
struct NotParityEigenstate : Error {
    using Error::Error;
};

// Single-mode validity bound undefined: mode splitting never reaches the
// qubit gap.
struct ResonanceUnreachable : Error {
    using Error::Error;
};

} // namespace usc
