#pragma once

/*
 * n-dimensional discrete Suslov flow.  The constraint keeps only the
 * velocity components omega_in (i < n); the bilinear discretization of the
 * reduced quadratic system is linear in the new state, with coefficient
 * matrix A built below.  Steps are accepted only when A is well enough
 * conditioned and the solved state reproduces the bilinear relations.
 */

#include <vector>

#include <Eigen/Dense>

#include "suslov/types.hpp"

namespace suslov::nd {

// Diagonal inertia moments I_11..I_nn plus the coupling products
// I_1n..I_{n-1}n of the last row/column.
struct NDInertia {
    int n = 0;
    std::vector<double> diag;  // n entries
    std::vector<double> off;   // n-1 entries
};

// State: the surviving components omega_1n..omega_{n-1}n.
struct NDOmega {
    std::vector<double> vals;
};

// Throws std::invalid_argument unless n >= 3, sizes match, every entry is
// finite and every I_ii + I_nn > 0.
void validate(const NDInertia& inertia);

// Coefficient matrix of the implicit step system, (n-1) x (n-1):
//   A_ii = 1 - eps (sum_{j != i} I_jn w_jn) / (2 d_i),
//   A_ij = eps (2 I_in w_jn - I_jn w_in) / (2 d_i),   d_i = I_ii + I_nn.
Eigen::MatrixXd build_step_matrix(const NDOmega& omega, const NDInertia& inertia, StepSize eps);

// Solve A(omega) omega~ = omega.  Throws SingularStepMatrix when the
// condition number exceeds kCondMax or the solution fails the residual
// certificate below.
NDOmega hk_step_nd(const NDOmega& omega, const NDInertia& inertia, StepSize eps);

// Max relative residual of the bilinear step relations between two states;
// the certificate an accepted step must pass (<= kNdResidualTol).
double step_residual(const NDOmega& before, const NDOmega& after,
                     const NDInertia& inertia, StepSize eps);

// Right-hand side of the continuous reduced system,
//   d_i w_in' = -I_in sum_j w_jn^2 + (sum_j I_jn w_jn) w_in.
NDOmega continuous_rhs_nd(const NDOmega& omega, const NDInertia& inertia);

}  // namespace suslov::nd
