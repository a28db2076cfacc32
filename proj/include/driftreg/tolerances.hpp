#pragma once

// Numerical tolerances shared by the library and its tests.

namespace driftreg::tol {

// Cyclic Jacobi stops once the off-diagonal Frobenius norm falls below this
// fraction of the full Frobenius norm, or after jacobi_sweep_factor*d*d sweeps.
inline constexpr double jacobi_off_diagonal = 1e-12;
inline constexpr int jacobi_sweep_factor = 100;

// Cholesky rejects a pivot <= cholesky_pivot * max(1, max |A_ii|).
inline constexpr double cholesky_pivot = 1e-13;

// Mahalanobis ball projection: bisection on the multiplier stops when
// |‖w‖ - R_B| <= projection_relative * R_B or after projection_max_iterations.
inline constexpr double projection_relative = 1e-9;
inline constexpr int projection_max_iterations = 200;

// Acceptance of post-conditions checked at runtime and in tests.
inline constexpr double ball_slack = 1e-9;
inline constexpr double eigen_floor_slack = 1e-9;
inline constexpr double reconstruction = 1e-9;
inline constexpr double solve_residual = 1e-9;

// Default NLMS regularizer.
inline constexpr double nlms_eps = 1e-8;

// Ridge regularizer standing in for the unregularized best fixed comparator.
inline constexpr double comparator_ridge = 1e-10;

}  // namespace driftreg::tol
