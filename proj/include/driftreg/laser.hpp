#pragma once

// LASER: last-step min-max regression against a drifting comparator.
//
// The state is the quadratic P_t(u) = u^T D_t u - 2 u^T e_t + f_t, the value of
// min Q_t over all comparator prefixes ending in u, where
//   Q_t(u_1..u_t) = b|u_1|^2 + c sum_s |u_{s+1} - u_s|^2 + sum_s (y_s - u_s^T x_s)^2.
// Recursion:
//   D_1 = b I + x x^T,                 D_t = (D_{t-1}^{-1} + I/c)^{-1} + x x^T
//   e_1 = y x,                         e_t = (I + D_{t-1}/c)^{-1} e_{t-1} + y x
//   f_1 = y^2,                         f_t = f_{t-1} - e_{t-1}^T (cI + D_{t-1})^{-1} e_{t-1} + y^2
// Prediction: yhat_t = x^T D_t^{-1} (I + D_{t-1}/c)^{-1} e_{t-1}.
//
// c = infinity is an exact mode in which the interpolation with the identity
// is skipped, making the learner coincide with AAR.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "driftreg/learner.hpp"

namespace driftreg {

struct LaserConfig {
  double b = 1.0;
  double c = std::numeric_limits<double>::infinity();
  // When set, predictions are clipped to [-Y, Y].
  std::optional<double> y_bound;
  // Track f_t (only needed to verify the closed-form minimum of Q_t).
  bool track_f = false;

  bool infinite_c() const noexcept { return std::isinf(c); }
  void validate() const;
};

struct LaserState {
  SymMatrix d;  // D_t; before the first update this is the virtual D_0
  Vector e;
  double f = 0.0;
  std::int64_t t = 0;

  static LaserState initial(std::size_t dim, const LaserConfig& config);
};

// Quantities shared by predict and update for input x at step t.
struct LaserStepTerms {
  SymMatrix d_next;       // D_t
  Vector e_interpolated;  // (I + D_{t-1}/c)^{-1} e_{t-1}
  double yhat;            // unclipped x^T D_t^{-1} D'_{t-1} e_{t-1}
};

LaserStepTerms laser_terms(const LaserState& state, const Vector& x, const LaserConfig& config);

// Prediction for x from the state at t-1 (clipped when config.y_bound is set).
double laser_predict(const LaserState& state, const Vector& x, const LaserConfig& config);
void laser_update(LaserState& state, const Sample& s, const LaserConfig& config);
double laser_step(LaserState& state, const Sample& s, const LaserConfig& config);

// The equivalent (w, Sigma) view: w_t = D_t^{-1} e_t, Sigma_t = D_t^{-1}.
// Before the first update Sigma_0 = (c-b)/(bc) I and w_0 = 0.
Vector laser_weights(const LaserState& state);
SymMatrix laser_sigma(const LaserState& state, const LaserConfig& config);

// Shrinkage-form prediction x^T w / (1 + x^T (Sigma + I/c) x) computed from the
// (w, Sigma) view. Algebraically equal to the unclipped laser_predict.
double laser_predict_shrinkage(const LaserState& state, const Vector& x, const LaserConfig& config);

// Cap on lambda_max(D_t) for inputs with |x| <= x_bound.
double laser_eigenvalue_cap(double x_bound, double b, double c);

struct LowDriftTuning {
  double c;
  bool applicable;  // V2 <= T sqrt(2) Y^2 d X / mu^{3/2}
};

// c = (sqrt(2) T Y^2 d X / V2)^{2/3}; b enters only the applicability test.
LowDriftTuning tune_c_low_drift(std::int64_t horizon, double y_bound, std::int64_t dim,
                                double x_bound, double drift_v2, double b);
// c = sqrt(Y^2 d M T / V2) with M = max(3 X^2, b + X^2).
double tune_c_high_drift(std::int64_t horizon, double y_bound, std::int64_t dim, double x_bound,
                         double b, double drift_v2);

class LaserLearner final : public Learner {
 public:
  LaserLearner(std::size_t dim, LaserConfig config);

  std::string name() const override { return "laser"; }
  std::size_t dim() const noexcept override { return state_.e.size(); }
  std::int64_t steps() const noexcept override { return state_.t; }
  double predict(const Vector& x) override;
  void update(const Vector& x, double y) override;
  Vector weights() const override { return laser_weights(state_); }
  SymMatrix covariance() const override { return laser_sigma(state_, config_); }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<LaserLearner>(*this); }

  const LaserState& state() const noexcept { return state_; }
  const LaserConfig& config() const noexcept { return config_; }

 private:
  LaserState state_;
  LaserConfig config_;
  // Terms computed by predict(x), reused by the following update(x, y).
  std::optional<std::pair<Vector, LaserStepTerms>> cached_;
};

}  // namespace driftreg
