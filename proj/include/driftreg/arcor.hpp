#pragma once

// ARCOR: AROWR with data-dependent covariance resets and Mahalanobis
// projection of the weights onto a Euclidean ball.
//
// Per step, in this order:
//   1. yhat = x^T w_{t-1}
//   2. candidate Sigma~ = (Sigma_{t-1}^{-1} + x x^T / r)^{-1}
//   3. keep Sigma~ if lambda_min(Sigma~) >= Lambda_i, otherwise Sigma_t = I and
//      the segment index i advances
//   4. w~ = w_{t-1} + (y - x^T w_{t-1}) Sigma_{t-1} x / (r + x^T Sigma_{t-1} x)
//   5. w_t = argmin_{|w| <= R_B} (w - w~)^T Sigma_t^{-1} (w - w~)

#include <cstdint>
#include <limits>
#include <vector>

#include "driftreg/learner.hpp"

namespace driftreg {

// Eigenvalue floors Lambda_1 >= Lambda_2 >= ... in (0, 1), indexed from 1.
class LambdaSchedule {
 public:
  enum class Kind { polynomial, explicit_list, zero };

  // Lambda_i = 1 / (i^(q-1) + 1), q != 0. Nonincreasing requires q >= 1.
  static LambdaSchedule polynomial(double q);
  // Nonincreasing list with every entry in (0, 1).
  static LambdaSchedule explicit_list(std::vector<double> values);
  // Lambda_i = value for every i.
  static LambdaSchedule constant(double value);
  // Lambda_i = 0: resets never fire. Used to express the AROWR reduction.
  static LambdaSchedule zero();

  // Throws InvalidArgument for i < 1 or i past the end of an explicit list.
  double value(std::int64_t i) const;

  Kind kind() const noexcept { return kind_; }
  double q() const noexcept { return q_; }
  const std::vector<double>& values() const noexcept { return values_; }
  bool repeats_last() const noexcept { return repeat_last_; }

  bool operator==(const LambdaSchedule&) const = default;

 private:
  LambdaSchedule() = default;

  Kind kind_ = Kind::zero;
  double q_ = 0.0;
  std::vector<double> values_;
  bool repeat_last_ = false;
};

double lambda_value(const LambdaSchedule& schedule, std::int64_t i);

// q = 2 log T / (log T + log V1): polynomial exponent from a drift budget V1.
// Rejects T < 2, V1 <= 0 and V1 == 1 (undefined drift exponent).
double choose_q(std::int64_t horizon, double drift_v1);

struct ArcorConfig {
  double r = 1.0;
  double radius = std::numeric_limits<double>::infinity();  // R_B
  LambdaSchedule schedule = LambdaSchedule::polynomial(2.0);

  void validate() const;
};

struct ArcorState {
  Vector w;
  SymMatrix sigma;
  std::int64_t segment = 1;  // i
  std::int64_t t = 0;
  std::vector<std::int64_t> resets;  // steps t at which Sigma_t was reset

  static ArcorState initial(std::size_t dim);
};

// (Sigma^{-1} + x x^T / r)^{-1} via a rank-one downdate of Sigma.
SymMatrix candidate_sigma(const SymMatrix& sigma_prev, const Vector& x, double r);

struct ResetDecision {
  SymMatrix sigma;
  std::int64_t segment;
  bool reset;
};

ResetDecision reset_check(const SymMatrix& sigma_tilde, const LambdaSchedule& schedule,
                          std::int64_t segment);

struct Projection {
  Vector w;
  double alpha;  // Lagrange multiplier, 0 when w~ is already inside the ball
};

// Mahalanobis projection onto {w : |w| <= radius}; returns (I + alpha Sigma)^{-1} w~.
Projection project_to_ball(const Vector& w_tilde, const SymMatrix& sigma, double radius);

double arcor_step(ArcorState& state, const Sample& s, const ArcorConfig& config);

// Lengths T_1..T_{n+1} of the segments delimited by the reset steps of a run
// of `total` steps; they sum to `total`.
std::vector<std::int64_t> segment_lengths(const std::vector<std::int64_t>& resets,
                                          std::int64_t total);

class ArcorLearner final : public Learner {
 public:
  ArcorLearner(std::size_t dim, ArcorConfig config);

  std::string name() const override { return "arcor"; }
  std::size_t dim() const noexcept override { return state_.w.size(); }
  std::int64_t steps() const noexcept override { return state_.t; }
  double predict(const Vector& x) override;
  void update(const Vector& x, double y) override;
  Vector weights() const override { return state_.w; }
  SymMatrix covariance() const override { return state_.sigma; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<ArcorLearner>(*this); }

  const ArcorState& state() const noexcept { return state_; }
  const ArcorConfig& config() const noexcept { return config_; }

 private:
  ArcorState state_;
  ArcorConfig config_;
};

}  // namespace driftreg
