#pragma once

#include <stdexcept>
#include <string>

namespace persuasion {

// Base of every error the library raises on purpose.
struct PersuasionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed inputs: bad vectors, bad matrices, bad files, broken type invariants.
struct ValidationError : PersuasionError {
    using PersuasionError::PersuasionError;
};

struct DimensionMismatch : ValidationError {
    using ValidationError::ValidationError;
};

// Conditioning on a signal whose marginal likelihood is zero under the updating prior.
struct ZeroLikelihoodSignal : PersuasionError {
    using PersuasionError::PersuasionError;
};

// Enumeration guard rails.
struct CapExceeded : PersuasionError {
    using PersuasionError::PersuasionError;
};
struct DepthCapExceeded : CapExceeded {
    using CapExceeded::CapExceeded;
};
struct LeafCapExceeded : CapExceeded {
    using CapExceeded::CapExceeded;
};

// A stated precondition of a solver or construction does not hold.
struct PreconditionError : PersuasionError {
    using PersuasionError::PersuasionError;
};

struct InfeasibleBiasedPosterior : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct NotBayesPlausible : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct ZeroPriorState : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct NotCommonPreferences : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct NotTransparentMotives : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct InfeasibleGrid : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct PreconditionViolated : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct TargetInfeasible : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct GammaOutOfRange : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct DegenerateGeometry : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct NotInHull : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct WeightMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};

} // namespace persuasion
