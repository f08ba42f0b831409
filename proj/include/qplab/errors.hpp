#pragma once
// Error types shared across the library. Each numerical failure mode gets
// its own type so callers can distinguish "bad input" from "budget hit".

#include <stdexcept>
#include <string>

namespace qplab {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Frequency expansion hit a remainder below the noise floor: the input is
// (numerically) rational and the rotation-orbit machinery does not apply.
struct RationalFrequency : Error {
    using Error::Error;
};

// An orbit search exceeded its iteration cap.
struct SearchBudgetExceeded : Error {
    using Error::Error;
};

// A located critical point has |second derivative| below tolerance.
struct DegenerateCritical : Error {
    using Error::Error;
};

// A cocycle specification violates its family invariants.
struct InvalidSpec : Error {
    using Error::Error;
};

// Singular values too close: most-contraction direction is ill-defined.
struct NearConformal : Error {
    using Error::Error;
};

// Adjacent field samples jump by >= pi/2: grid too coarse to lift a branch.
struct BranchAmbiguity : Error {
    using Error::Error;
};

// Inputs do not form a valid resonant decomposition.
struct NotType3 : Error {
    using Error::Error;
};

// Block-chaining hypothesis gamma > 2/(beta - 1/beta) fails.
struct HypothesisFailed : Error {
    using Error::Error;
};

// Separation between stable/unstable directions too small to chain blocks.
struct SeparationTooSmall : Error {
    using Error::Error;
};

}  // namespace qplab
