#include "suslov/model3.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "suslov/constants.hpp"
#include "suslov/errors.hpp"

namespace suslov {

void validate(const Inertia3& inertia) {
    if (!(inertia.I1 > 0.0) || !(inertia.I2 > 0.0))
        throw std::invalid_argument("principal moments of inertia must be positive");
    for (double v : {inertia.I1, inertia.I2, inertia.I13, inertia.I23, inertia.I3})
        if (!std::isfinite(v)) throw std::invalid_argument("inertia entries must be finite");
}

double delta(const BodyOmega& omega, const Inertia3& in, StepSize eps) {
    const double e = eps.epsilon;
    const double o1 = omega.omega1, o2 = omega.omega2;
    const double a = 1.0 + e * in.I13 / (2.0 * in.I1) * o2;
    const double b = 1.0 - e * in.I23 / (2.0 * in.I2) * o1;
    const double q = e * e / (in.I1 * in.I2)
        * (in.I13 * o1 / 2.0 + in.I23 * o2)
        * (in.I13 * o1 + in.I23 * o2 / 2.0);
    return a * b + q;
}

BodyOmega hk_step(const BodyOmega& omega, const Inertia3& in, StepSize eps) {
    if (in.is_degenerate()) return omega;  // decoupled system: identity map
    const double d = delta(omega, in, eps);
    if (std::abs(d) <= kDetTol)
        throw DegenerateStep("step map pole: |Delta| = " + std::to_string(std::abs(d)) +
                             " at omega = (" + std::to_string(omega.omega1) + ", " +
                             std::to_string(omega.omega2) + ")");
    const double e = eps.epsilon;
    const double o1 = omega.omega1, o2 = omega.omega2;
    const double n1 = o1 - e * in.I23 / (2.0 * in.I2) * o1 * o1
                         - e * in.I13 / (2.0 * in.I1) * o1 * o2
                         - e * in.I23 / in.I1 * o2 * o2;
    const double n2 = o2 + e * in.I13 / (2.0 * in.I1) * o2 * o2
                         + e * in.I23 / (2.0 * in.I2) * o1 * o2
                         + e * in.I13 / in.I2 * o1 * o1;
    return {n1 / d, n2 / d};
}

double first_integral(const BodyOmega& omega, const Inertia3& in, StepSize eps) {
    const double s = in.I13 * omega.omega1 + in.I23 * omega.omega2;
    const double e = eps.epsilon;
    return (in.I1 * omega.omega1 * omega.omega1 + in.I2 * omega.omega2 * omega.omega2)
         / (4.0 * in.I1 * in.I2 + e * e * s * s);
}

double energy(const BodyOmega& omega, const Inertia3& in) {
    return 0.5 * (in.I1 * omega.omega1 * omega.omega1 + in.I2 * omega.omega2 * omega.omega2);
}

double constraint_residual(const BodyOmega& omega, const Inertia3& in) {
    return in.I13 * omega.omega1 + in.I23 * omega.omega2;
}

PlanarState to_planar(const BodyOmega& omega, const Inertia3& in) {
    return {in.I13 * omega.omega1 + in.I23 * omega.omega2,
            in.I23 * in.I1 * omega.omega1 - in.I13 * in.I2 * omega.omega2};
}

BodyOmega from_planar(const PlanarState& p, const Inertia3& in) {
    const double j = in.I13 * in.I13 * in.I2 + in.I23 * in.I23 * in.I1;
    if (j == 0.0)
        throw DegenerateInertia("plane coordinates are singular for I13 = I23 = 0");
    return {(in.I13 * in.I2 * p.x + in.I23 * p.y) / j,
            (in.I23 * in.I1 * p.x - in.I13 * p.y) / j};
}

PlanarState planar_step(const PlanarState& p, const Inertia3& in, StepSize eps) {
    const double e = eps.epsilon;
    const double m = 2.0 * in.I1 * in.I2;
    const double den = m - e * p.y + e * e * p.x * p.x;
    if (std::abs(den) <= kDetTol)
        throw DegenerateStep("planar step pole: |denominator| = " + std::to_string(std::abs(den)));
    const double xt = p.x * (m + e * p.y) / den;
    return {xt, p.y - e * xt * p.x};
}

double first_integral_planar(const PlanarState& p, const Inertia3& in, StepSize eps) {
    const double e = eps.epsilon;
    return (in.I1 * in.I2 * p.x * p.x + p.y * p.y)
         / (4.0 * in.I1 * in.I2 + e * e * p.x * p.x);
}

TrajectorySample make_sample(long n, double t0, const BodyOmega& omega,
                             const Inertia3& in, StepSize eps) {
    return {n,
            t0 + static_cast<double>(n) * eps.epsilon,
            omega,
            to_planar(omega, in),
            first_integral(omega, in, eps),
            energy(omega, in),
            constraint_residual(omega, in)};
}

}  // namespace suslov
