#pragma once

/*
 * Reference machinery the tests measure the discrete maps against:
 * continuous right-hand sides, fixed-step integrators, convergence-order
 * fitting, and a compensated-arithmetic evaluation of the 3D step.
 */

#include <functional>
#include <vector>

#include "suslov/types.hpp"

namespace suslov::reference {

// Autonomous first-order system given by its right-hand side.
struct OdeSystem {
    int dimension = 0;
    std::function<std::vector<double>(const std::vector<double>&)> rhs;
};

struct ConvergenceReport {
    std::vector<double> eps_levels;
    std::vector<double> errors;
    double estimated_order = 0.0;
};

// Continuous reduced Suslov equations,
//   I1 w1' = -I13 w1 w2 - I23 w2^2,
//   I2 w2' =  I13 w1^2 + I23 w1 w2.
BodyOmega continuous_rhs_3d(const BodyOmega& omega, const Inertia3& inertia);

// Pushforward of the same field to the adapted plane coordinates:
//   x' = x y / (I1 I2),   y' = -x^2.
PlanarState continuous_rhs_planar(const PlanarState& p, const Inertia3& inertia);

// Classical fixed-step integrators over [0, t_end]; a short final partial
// step closes any remainder.  Throw StepBudgetExceeded past kStepBudget.
std::vector<double> rk4_integrate(const OdeSystem& system, std::vector<double> state,
                                  double t_end, double dt);
std::vector<double> euler_integrate(const OdeSystem& system, std::vector<double> state,
                                    double t_end, double dt);

// Least-squares slope of log(error) against log(eps).  Requires at least
// four strictly halving levels; throws DegenerateFit when any error sits
// at the rounding floor.
ConvergenceReport fit_order(const std::vector<double>& eps_levels,
                            const std::vector<double>& errors);

// Errors of a one-parameter family against a fixed reference state, fitted
// as above.  family(eps) is the state the method under test produces.
ConvergenceReport estimate_order(const std::function<std::vector<double>(double)>& family,
                                 const std::vector<double>& reference_state,
                                 const std::vector<double>& eps_levels);

// The 3D step evaluated in double-double arithmetic, transcribed separately
// from the production path so the two can check each other.
BodyOmega extended_precision_step(const BodyOmega& omega, const Inertia3& inertia, StepSize eps);

}  // namespace suslov::reference
