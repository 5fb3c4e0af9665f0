#pragma once

/*
 * Discrete-time Suslov flow in three dimensions.
 *
 * The continuous reduced equations are quadratic, so replacing each product
 * by its symmetric bilinear form in consecutive states yields an implicit
 * scheme that is linear in the new state.  Solving that linear system by
 * hand gives the explicit rational map implemented in hk_step; delta is the
 * determinant of the 2x2 system, and the map has a pole where it vanishes.
 *
 * The map preserves the rational integral F = (I1 w1^2 + I2 w2^2) /
 * (4 I1 I2 + eps^2 (I13 w1 + I23 w2)^2) exactly, fixes the line
 * I13 w1 + I23 w2 = 0 pointwise, and in the adapted plane coordinates
 * (x, y) = (I13 w1 + I23 w2,  I23 I1 w1 - I13 I2 w2) it conjugates to a
 * one-parameter family of maps on the level curves of the planar integral.
 */

#include "suslov/types.hpp"

namespace suslov {

// Determinant of the implicit step system at the current state.
double delta(const BodyOmega& omega, const Inertia3& inertia, StepSize eps);

// One step of the discrete flow.  Degenerate inertia short-circuits to the
// identity (the continuous system it discretizes is trivial there).
// Throws DegenerateStep when |delta| <= kDetTol.
BodyOmega hk_step(const BodyOmega& omega, const Inertia3& inertia, StepSize eps);

// Conserved rational first integral of the discrete flow.
double first_integral(const BodyOmega& omega, const Inertia3& inertia, StepSize eps);

// Kinetic energy (I1 w1^2 + I2 w2^2) / 2.  Conserved by the continuous
// flow, not by the discrete one.
double energy(const BodyOmega& omega, const Inertia3& inertia);

// Steady-state line value I13 w1 + I23 w2; trajectories decay toward 0.
double constraint_residual(const BodyOmega& omega, const Inertia3& inertia);

// Linear change to the adapted plane coordinates and its inverse.
// from_planar throws DegenerateInertia when the change is singular.
PlanarState to_planar(const BodyOmega& omega, const Inertia3& inertia);
BodyOmega from_planar(const PlanarState& p, const Inertia3& inertia);

// The conjugated planar map:
//   x~ = x (2 I1 I2 + eps y) / (2 I1 I2 - eps y + eps^2 x^2),
//   y~ = y - eps x~ x.
// Fixes x = 0 pointwise; throws DegenerateStep at the pole.
PlanarState planar_step(const PlanarState& p, const Inertia3& inertia, StepSize eps);

// First integral of the planar map: (I1 I2 x^2 + y^2) / (4 I1 I2 + eps^2 x^2).
// Equals planar_jacobian-magnitude times first_integral under the change of
// coordinates (the two normalizations differ by that constant factor).
double first_integral_planar(const PlanarState& p, const Inertia3& inertia, StepSize eps);

// Full trajectory row at step n, with t = t0 + n * eps.
TrajectorySample make_sample(long n, double t0, const BodyOmega& omega,
                             const Inertia3& inertia, StepSize eps);

// Throws std::invalid_argument unless I1 > 0, I2 > 0 and all entries finite.
void validate(const Inertia3& inertia);

}  // namespace suslov
