#include "suslov/reference.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "suslov/constants.hpp"
#include "suslov/ddouble.hpp"
#include "suslov/errors.hpp"

namespace suslov::reference {

BodyOmega continuous_rhs_3d(const BodyOmega& omega, const Inertia3& in) {
    const double o1 = omega.omega1, o2 = omega.omega2;
    return {(-in.I13 * o1 * o2 - in.I23 * o2 * o2) / in.I1,
            (in.I13 * o1 * o1 + in.I23 * o1 * o2) / in.I2};
}

PlanarState continuous_rhs_planar(const PlanarState& p, const Inertia3& in) {
    return {p.x * p.y / (in.I1 * in.I2), -p.x * p.x};
}

namespace {

using Vec = std::vector<double>;

void check_budget(double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end >= 0.0))
        throw std::invalid_argument("integration needs dt > 0 and t_end >= 0");
    if (t_end / dt > static_cast<double>(kStepBudget))
        throw StepBudgetExceeded("t_end / dt = " + std::to_string(t_end / dt) +
                                 " steps, budget " + std::to_string(kStepBudget));
}

Vec axpy(const Vec& base, double a, const Vec& dir) {
    Vec out(base.size());
    for (size_t i = 0; i < base.size(); ++i) out[i] = base[i] + a * dir[i];
    return out;
}

void rk4_step(const OdeSystem& sys, Vec& state, double dt) {
    const Vec k1 = sys.rhs(state);
    const Vec k2 = sys.rhs(axpy(state, dt / 2.0, k1));
    const Vec k3 = sys.rhs(axpy(state, dt / 2.0, k2));
    const Vec k4 = sys.rhs(axpy(state, dt, k3));
    for (size_t i = 0; i < state.size(); ++i)
        state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

std::vector<double> rk4_integrate(const OdeSystem& sys, std::vector<double> state,
                                  double t_end, double dt) {
    check_budget(t_end, dt);
    double t = 0.0;
    while (t + dt <= t_end) {
        rk4_step(sys, state, dt);
        t += dt;
    }
    if (t < t_end) rk4_step(sys, state, t_end - t);  // close the remainder
    return state;
}

std::vector<double> euler_integrate(const OdeSystem& sys, std::vector<double> state,
                                    double t_end, double dt) {
    check_budget(t_end, dt);
    double t = 0.0;
    auto step = [&](double h) {
        const Vec f = sys.rhs(state);
        for (size_t i = 0; i < state.size(); ++i) state[i] += h * f[i];
    };
    while (t + dt <= t_end) {
        step(dt);
        t += dt;
    }
    if (t < t_end) step(t_end - t);
    return state;
}

ConvergenceReport fit_order(const std::vector<double>& eps_levels,
                            const std::vector<double>& errors) {
    if (eps_levels.size() != errors.size() || eps_levels.size() < 4)
        throw std::invalid_argument("need at least four matching (eps, error) pairs");
    for (size_t i = 0; i + 1 < eps_levels.size(); ++i) {
        if (!(eps_levels[i] > 0.0) || !(eps_levels[i + 1] > 0.0))
            throw std::invalid_argument("eps levels must be positive");
        if (std::abs(eps_levels[i + 1] - eps_levels[i] / 2.0) > 1e-9 * eps_levels[i])
            throw std::invalid_argument("eps levels must halve");
    }
    for (double e : errors) {
        if (!(e >= 0.0)) throw std::invalid_argument("errors must be nonnegative");
        if (e <= kFitFloor)
            throw DegenerateFit("error " + std::to_string(e) +
                                " at the rounding floor; order fit is meaningless");
    }
    // Least-squares slope of log(error) against log(eps).
    const size_t n = eps_levels.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double x = std::log(eps_levels[i]);
        const double y = std::log(errors[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double slope = (static_cast<double>(n) * sxy - sx * sy)
                       / (static_cast<double>(n) * sxx - sx * sx);
    return {eps_levels, errors, slope};
}

ConvergenceReport estimate_order(const std::function<std::vector<double>(double)>& family,
                                 const std::vector<double>& reference_state,
                                 const std::vector<double>& eps_levels) {
    std::vector<double> errors;
    errors.reserve(eps_levels.size());
    for (double e : eps_levels) {
        const std::vector<double> got = family(e);
        if (got.size() != reference_state.size())
            throw std::invalid_argument("family state dimension mismatch");
        double err2 = 0.0;
        for (size_t i = 0; i < got.size(); ++i) {
            const double d = got[i] - reference_state[i];
            err2 += d * d;
        }
        errors.push_back(std::sqrt(err2));
    }
    return fit_order(eps_levels, errors);
}

BodyOmega extended_precision_step(const BodyOmega& omega, const Inertia3& in, StepSize eps) {
    if (in.is_degenerate()) return omega;
    // Written out independently of the double-precision path.
    const DDouble e(eps.epsilon);
    const DDouble i1(in.I1), i2(in.I2), i13(in.I13), i23(in.I23);
    const DDouble o1(omega.omega1), o2(omega.omega2);
    const DDouble half(0.5);

    const DDouble det =
        (DDouble(1.0) + e * i13 * o2 / (i1 * 2.0)) * (DDouble(1.0) - e * i23 * o1 / (i2 * 2.0))
        + e * e / (i1 * i2) * (i13 * o1 * half + i23 * o2) * (i13 * o1 + i23 * o2 * half);
    if (std::abs(to_double(det)) <= kDetTol)
        throw DegenerateStep("step map pole in extended precision");

    const DDouble n1 = o1 - e * i23 * o1 * o1 / (i2 * 2.0)
                          - e * i13 * o1 * o2 / (i1 * 2.0)
                          - e * i23 * o2 * o2 / i1;
    const DDouble n2 = o2 + e * i13 * o2 * o2 / (i1 * 2.0)
                          + e * i23 * o1 * o2 / (i2 * 2.0)
                          + e * i13 * o1 * o1 / i2;
    return {to_double(n1 / det), to_double(n2 / det)};
}

}  // namespace suslov::reference
