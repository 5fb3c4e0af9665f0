#pragma once

/*
 * Core value types for the nonholonomically constrained rigid body with a
 * fixed point.  The constraint kills the third angular velocity component,
 * so states carry only (omega1, omega2); nothing here owns dynamics.
 */

namespace suslov {

// Inertia tensor data surviving the reduction: principal moments I1, I2 and
// the products of inertia I13, I23 that couple the constrained axis.  I3 is
// kept for completeness but cancels out of the reduced equations.
struct Inertia3 {
    double I1 = 1.0;
    double I2 = 1.0;
    double I13 = 0.0;
    double I23 = 0.0;
    double I3 = 0.0;

    // With both products of inertia zero the reduced system decouples and
    // every state is an equilibrium.
    bool is_degenerate() const { return I13 == 0.0 && I23 == 0.0; }

    // Determinant of the linear change to adapted plane coordinates;
    // vanishes exactly when the inertia is degenerate.
    double planar_jacobian() const { return -(I13 * I13 * I2 + I23 * I23 * I1); }
};

// Angular velocity in the body frame; the third component is identically
// zero by the constraint and is never stored.
struct BodyOmega {
    double omega1 = 0.0;
    double omega2 = 0.0;
};

// Adapted plane coordinates: x spans the constraint expression, y the
// direction conserved along the steady-state line.
struct PlanarState {
    double x = 0.0;
    double y = 0.0;
};

// Discretization step.  Signed: negative steps give the inverse map, which
// the reversibility checks rely on.  Scenario-level validation restricts
// user-facing runs to positive steps.
struct StepSize {
    double epsilon = 0.0;
};

// One row of a simulated trajectory.
struct TrajectorySample {
    long n = 0;             // step index
    double t = 0.0;         // t0 + n * epsilon
    BodyOmega omega;
    PlanarState planar;
    double F = 0.0;         // conserved rational first integral
    double energy = 0.0;    // kinetic energy (not conserved by the map)
    double constraint = 0.0;  // I13*omega1 + I23*omega2, the steady-state line value
};

}  // namespace suslov
