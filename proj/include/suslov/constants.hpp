#pragma once

namespace suslov {

// Absolute threshold on step-map denominators below which a step is refused.
inline constexpr double kDetTol = 1e-12;

// Relative drift of the first integral tolerated per step / per 1e4 steps.
inline constexpr double kConsTolStep = 1e-10;
inline constexpr double kConsTolRun = 1e-9;

// Condition number above which the n-dimensional step matrix is rejected.
inline constexpr double kCondMax = 1e12;

// Relative residual an accepted n-dimensional step must satisfy.
inline constexpr double kNdResidualTol = 1e-11;

// Fixed-step integrator step budget.
inline constexpr long kStepBudget = 50'000'000;

// Errors at or below this floor make a convergence-order fit meaningless.
inline constexpr double kFitFloor = 1e-13;

}  // namespace suslov
