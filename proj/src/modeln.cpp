#include "suslov/modeln.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "suslov/constants.hpp"
#include "suslov/errors.hpp"

namespace suslov::nd {

void validate(const NDInertia& in) {
    if (in.n < 3) throw std::invalid_argument("dimension must be at least 3");
    if (static_cast<int>(in.diag.size()) != in.n ||
        static_cast<int>(in.off.size()) != in.n - 1)
        throw std::invalid_argument("inertia vectors do not match the dimension");
    for (double v : in.diag)
        if (!std::isfinite(v)) throw std::invalid_argument("inertia entries must be finite");
    for (double v : in.off)
        if (!std::isfinite(v)) throw std::invalid_argument("inertia entries must be finite");
    for (int i = 0; i + 1 < in.n; ++i)
        if (!(in.diag[i] + in.diag[in.n - 1] > 0.0))
            throw std::invalid_argument("I_ii + I_nn must be positive");
}

Eigen::MatrixXd build_step_matrix(const NDOmega& omega, const NDInertia& in, StepSize eps) {
    const int m = in.n - 1;
    const double e = eps.epsilon;
    Eigen::MatrixXd a(m, m);
    for (int i = 0; i < m; ++i) {
        const double d = in.diag[i] + in.diag[in.n - 1];
        double coupled = 0.0;  // sum_{j != i} I_jn w_jn
        for (int j = 0; j < m; ++j)
            if (j != i) coupled += in.off[j] * omega.vals[j];
        a(i, i) = 1.0 - e * coupled / (2.0 * d);
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            a(i, j) = e * (2.0 * in.off[i] * omega.vals[j] - in.off[j] * omega.vals[i])
                    / (2.0 * d);
        }
    }
    return a;
}

double step_residual(const NDOmega& before, const NDOmega& after,
                     const NDInertia& in, StepSize eps) {
    // Bilinear relations between consecutive states:
    //   d_i (w~_i - w_i) = eps [ -I_in sum_j w~_j w_j
    //                            + (1/2) sum_j I_jn (w~_j w_i + w_j w~_i) ].
    const int m = in.n - 1;
    const double e = eps.epsilon;
    double cross = 0.0, mixed_a = 0.0, mixed_b = 0.0;
    for (int j = 0; j < m; ++j) {
        cross += after.vals[j] * before.vals[j];
        mixed_a += in.off[j] * after.vals[j];
        mixed_b += in.off[j] * before.vals[j];
    }
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
        const double d = in.diag[i] + in.diag[in.n - 1];
        const double lhs = d * (after.vals[i] - before.vals[i]);
        const double rhs = e * (-in.off[i] * cross
                                + 0.5 * (mixed_a * before.vals[i] + mixed_b * after.vals[i]));
        const double scale = std::abs(lhs) + std::abs(rhs) + d;
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

NDOmega hk_step_nd(const NDOmega& omega, const NDInertia& in, StepSize eps) {
    validate(in);
    const int m = in.n - 1;
    if (static_cast<int>(omega.vals.size()) != m)
        throw std::invalid_argument("state does not match the dimension");

    const Eigen::MatrixXd a = build_step_matrix(omega, in, eps);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const double smin = svd.singularValues()(m - 1);
    const double smax = svd.singularValues()(0);
    if (!(smin > 0.0) || smax / smin > kCondMax)
        throw SingularStepMatrix("step matrix condition number exceeds " +
                                 std::to_string(kCondMax));

    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(omega.vals.data(), m);
    const Eigen::VectorXd sol = Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(w);
    NDOmega next{std::vector<double>(sol.data(), sol.data() + m)};

    const double res = step_residual(omega, next, in, eps);
    if (!(res <= kNdResidualTol))
        throw SingularStepMatrix("step residual " + std::to_string(res) +
                                 " exceeds the acceptance certificate");
    return next;
}

NDOmega continuous_rhs_nd(const NDOmega& omega, const NDInertia& in) {
    const int m = in.n - 1;
    double sq = 0.0, mom = 0.0;
    for (int j = 0; j < m; ++j) {
        sq += omega.vals[j] * omega.vals[j];
        mom += in.off[j] * omega.vals[j];
    }
    NDOmega out{std::vector<double>(m)};
    for (int i = 0; i < m; ++i) {
        const double d = in.diag[i] + in.diag[in.n - 1];
        out.vals[i] = (-in.off[i] * sq + mom * omega.vals[i]) / d;
    }
    return out;
}

}  // namespace suslov::nd
