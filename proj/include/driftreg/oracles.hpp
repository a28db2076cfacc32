#pragma once

// Brute-force reference computations. These are test instruments: they solve
// the batch problems behind each recursion directly (dense Gaussian
// elimination, exhaustive grids) and share no code with the learners.

#include <cstddef>
#include <span>
#include <vector>

#include "driftreg/laser.hpp"
#include "driftreg/linalg.hpp"
#include "driftreg/sample.hpp"

namespace driftreg::oracle {

// Gaussian elimination with partial pivoting on a dense copy of A.
Vector dense_solve(Matrix a, Vector b);

// argmin_w reg r^t |w|^2 + sum_i r^{t-i} (y_i - w^T x_i)^2.
Vector batch_ridge(std::span<const Sample> samples, double r, double reg);

struct QuadraticProblem {
  std::size_t steps = 0;  // t
  std::size_t dim = 0;    // d
  Matrix hessian;         // (t d) x (t d); Q(u) = u^T H u - 2 g^T u + k
  Vector linear;          // g
  double constant = 0.0;  // k
};

// Explicit quadratic form of
// Q_t(u_1..u_t) = b|u_1|^2 + c sum |u_{s+1}-u_s|^2 + sum (y_s - u_s^T x_s)^2.
QuadraticProblem build_q_problem(std::span<const Sample> samples, double b, double c);

struct QMinimum {
  double value;
  std::vector<Vector> argmin;  // u_1..u_t
};

// Throws InvalidArgument when t*d exceeds max_stacked.
QMinimum min_q_bruteforce(std::span<const Sample> samples, double b, double c,
                          std::size_t max_stacked = 32);

// Evaluates max over a label grid y in [-Y, Y] of the last-step objective
//   (y - yhat)^2 + e_t(y)^T D_t^{-1} e_t(y) - y^2
// for every yhat on the same grid and returns the minimizing yhat.
double minmax_predict_grid(const LaserState& state, const LaserConfig& config, const Vector& x,
                           double y_bound, double resolution = 1e-3);

// Best point of a polar grid over the disk |w| <= radius for the Mahalanobis
// objective (w - w~)^T Sigma^{-1} (w - w~). d = 2 only. The angular step is
// `resolution` radians and the radial step is resolution * radius.
Vector projection_oracle(const Vector& w_tilde, const SymMatrix& sigma, double radius,
                         double resolution = 2e-3);

// (w - w~)^T Sigma^{-1} (w - w~), with Sigma^{-1} from dense elimination.
double mahalanobis_objective(const Vector& w, const Vector& w_tilde, const SymMatrix& sigma);

}  // namespace driftreg::oracle
