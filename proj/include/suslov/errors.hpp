#pragma once

#include <stdexcept>
#include <string>

namespace suslov {

// Step map evaluated at (or too close to) a pole of the rational map.
struct DegenerateStep : std::runtime_error {
    explicit DegenerateStep(const std::string& what) : std::runtime_error(what) {}
};

// Operation requires coupling products of inertia but I13 = I23 = 0.
struct DegenerateInertia : std::runtime_error {
    explicit DegenerateInertia(const std::string& what) : std::runtime_error(what) {}
};

// Requested integral level outside the range the closed-form family covers.
struct LevelOutOfRange : std::runtime_error {
    explicit LevelOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

// Initial state lies on the pointwise-fixed line; no closed-form fit exists
// (the trajectory is a single point).
struct FixedPointState : std::runtime_error {
    explicit FixedPointState(const std::string& what) : std::runtime_error(what) {}
};

// n-dimensional step matrix is singular or numerically too ill-conditioned.
struct SingularStepMatrix : std::runtime_error {
    explicit SingularStepMatrix(const std::string& what) : std::runtime_error(what) {}
};

// Fixed-step integration would exceed the step budget.
struct StepBudgetExceeded : std::runtime_error {
    explicit StepBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Convergence-order fit attempted on errors at the rounding floor.
struct DegenerateFit : std::runtime_error {
    explicit DegenerateFit(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or contradictory scenario configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Figure preset id outside the published set.
struct UnknownFigure : ConfigError {
    explicit UnknownFigure(const std::string& what) : ConfigError(what) {}
};

// Output file could not be created or written.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace suslov
