#pragma once

/*
 * Closed-form solution of the planar map on a fixed integral level h.
 *
 * On the level curve of the planar integral the map reduces to a recursion
 * u -> u_step(u) whose solutions are u(n) = sinh(k1 eps n + k2), with the
 * shift k1 determined by the level through sinh(-k1 eps) = c(h).  Pulling
 * the substitution back gives explicit hyperbolic-secant / tanh formulas
 * for the planar trajectory and, through the inverse coordinate change,
 * for the body angular velocities.
 */

#include "suslov/types.hpp"

namespace suslov::closedform {

// The u-recursion splits into two branches; only the first solves the
// planar map (the second diverges from it as eps -> 0).
enum class UBranch { first, second };

// Everything needed to evaluate the closed-form trajectory.
struct ClosedFormParams {
    double h = 0.0;       // planar integral level, 0 < h < I1 I2 / eps^2
    double k1 = 0.0;      // per-step shift, always negative
    double k2 = 0.0;      // phase fixed by the initial state
    double sign_x = 1.0;  // sign of x along the trajectory (x never crosses 0)
    StepSize eps;
    Inertia3 inertia;
};

// c(h) = 2 eps sqrt(I1 I2 h) / (I1 I2 - h eps^2).
// Throws LevelOutOfRange unless 0 < h < I1 I2 / eps^2.
double c_of_h(double h, const Inertia3& inertia, StepSize eps);

// k1 < 0 with sinh(-k1 eps) = c(h).
double k1_of_h(double h, const Inertia3& inertia, StepSize eps);

// One step of the u-recursion: u~ = -c sqrt(u^2+1) +/- u sqrt(c^2+1).
double u_step(double u, double c, UBranch branch);

// u(n) = sinh(k1 eps n + k2).
double u_closed(long n, const ClosedFormParams& p);

// Validated construction from explicit parameters.
ClosedFormParams make_params(double h, double k2, double sign_x,
                             const Inertia3& inertia, StepSize eps);

// Fit the closed form through an initial state: h is the planar level of
// omega0 and k2, sign_x match the trajectory at n = 0.  Throws
// FixedPointState when omega0 lies on the pointwise-fixed line (x0 = 0),
// LevelOutOfRange when its level leaves the covered range.
ClosedFormParams fit_params(const BodyOmega& omega0, const Inertia3& inertia, StepSize eps);

// Point of the level curve F_planar = h at parameter phi:
//   x = 2 sqrt(I1 I2 h / D) cos(phi),  y = 2 I1 I2 sqrt(h / D) sin(phi),
//   D = I1 I2 - h eps^2 cos^2(phi).
PlanarState level_point(double phi, double h, const Inertia3& inertia, StepSize eps);

// Closed-form planar trajectory at step n:
//   x(n) = sign_x 2 sqrt(h I1 I2 / (I1 I2 - h eps^2)) / cosh(theta),
//   y(n) = 2 sqrt(h I1 I2) tanh(theta),        theta = k1 eps n + k2.
PlanarState planar_closed(long n, const ClosedFormParams& p);

// Body-frame closed form; the inverse coordinate change applied to
// planar_closed.  Throws DegenerateInertia when that change is singular.
BodyOmega omega_closed(long n, const ClosedFormParams& p);

}  // namespace suslov::closedform
