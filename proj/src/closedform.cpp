#include "suslov/closedform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "suslov/errors.hpp"
#include "suslov/model3.hpp"

namespace suslov::closedform {

namespace {

void check_level(double h, const Inertia3& in, StepSize eps) {
    const double p = in.I1 * in.I2;
    if (!(eps.epsilon > 0.0))
        throw std::invalid_argument("closed form requires a positive step");
    if (!(h > 0.0) || !(h < p / (eps.epsilon * eps.epsilon)))
        throw LevelOutOfRange("integral level h = " + std::to_string(h) +
                              " outside (0, I1 I2 / eps^2)");
}

}  // namespace

double c_of_h(double h, const Inertia3& in, StepSize eps) {
    check_level(h, in, eps);
    const double p = in.I1 * in.I2;
    return 2.0 * eps.epsilon * std::sqrt(p * h) / (p - h * eps.epsilon * eps.epsilon);
}

double k1_of_h(double h, const Inertia3& in, StepSize eps) {
    return -std::asinh(c_of_h(h, in, eps)) / eps.epsilon;
}

double u_step(double u, double c, UBranch branch) {
    const double s = std::sqrt(u * u + 1.0);
    const double t = std::sqrt(c * c + 1.0);
    return branch == UBranch::first ? -c * s + u * t : -c * s - u * t;
}

double u_closed(long n, const ClosedFormParams& p) {
    return std::sinh(p.k1 * p.eps.epsilon * static_cast<double>(n) + p.k2);
}

ClosedFormParams make_params(double h, double k2, double sign_x,
                             const Inertia3& in, StepSize eps) {
    validate(in);
    check_level(h, in, eps);
    if (sign_x != 1.0 && sign_x != -1.0)
        throw std::invalid_argument("sign_x must be +1 or -1");
    return {h, k1_of_h(h, in, eps), k2, sign_x, eps, in};
}

ClosedFormParams fit_params(const BodyOmega& omega0, const Inertia3& in, StepSize eps) {
    validate(in);
    const PlanarState p0 = to_planar(omega0, in);
    if (p0.x == 0.0)
        throw FixedPointState("initial state lies on the pointwise-fixed line x = 0");
    const double h = first_integral_planar(p0, in, eps);
    check_level(h, in, eps);
    // On the level curve, y = 2 sqrt(h I1 I2) tanh(theta); invert for the
    // phase.  q > 0 is equivalent to the level range check, up to rounding
    // at the boundary.
    const double q = 4.0 * h * in.I1 * in.I2 - p0.y * p0.y;
    if (!(q > 0.0))
        throw LevelOutOfRange("integral level at the edge of the covered range");
    const double k2 = std::asinh(p0.y / std::sqrt(q));
    const double sign_x = p0.x > 0.0 ? 1.0 : -1.0;
    return make_params(h, k2, sign_x, in, eps);
}

PlanarState level_point(double phi, double h, const Inertia3& in, StepSize eps) {
    check_level(h, in, eps);
    const double p = in.I1 * in.I2;
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double d = p - h * eps.epsilon * eps.epsilon * cp * cp;
    return {2.0 * std::sqrt(p * h / d) * cp, 2.0 * p * std::sqrt(h / d) * sp};
}

PlanarState planar_closed(long n, const ClosedFormParams& p) {
    const double pp = p.inertia.I1 * p.inertia.I2;
    const double theta = p.k1 * p.eps.epsilon * static_cast<double>(n) + p.k2;
    const double x = p.sign_x * 2.0
        * std::sqrt(p.h * pp / (pp - p.h * p.eps.epsilon * p.eps.epsilon))
        / std::cosh(theta);
    return {x, 2.0 * std::sqrt(p.h * pp) * std::tanh(theta)};
}

BodyOmega omega_closed(long n, const ClosedFormParams& p) {
    return from_planar(planar_closed(n, p), p.inertia);
}

}  // namespace suslov::closedform
