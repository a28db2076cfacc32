#pragma once

// Stationary second-order baselines (RLS, AAR, AROWR), the covariance-reset
// RLS variant CR-RLS, and first-order NLMS.
//
// Each algorithm is written as a free step function on a LinearState, which
// is what the tests exercise directly, plus a Learner wrapper used by the
// harness. Sigma is maintained directly through Sherman-Morrison updates; all
// weight updates use the pre-update matrix Sigma_{t-1}.

#include <cstdint>
#include <optional>

#include "driftreg/learner.hpp"

namespace driftreg {

struct LinearState {
  Vector w;
  SymMatrix sigma;
  std::int64_t t = 0;

  // w = 0, Sigma = scale * I.
  static LinearState initial(std::size_t dim, double sigma_scale = 1.0);
};

double predict_linear(const LinearState& state, const Vector& x);

// Each step function returns the prediction made before the label was used
// and advances the state in place.
double rls_step(LinearState& state, const Sample& s, double r);
double aar_step(LinearState& state, const Sample& s, double b);
double arowr_step(LinearState& state, const Sample& s, double r);
// reset_period == nullopt means T0 = infinity (plain RLS).
double crrls_step(LinearState& state, const Sample& s, double r,
                  std::optional<std::int64_t> reset_period);
double nlms_step(LinearState& state, const Sample& s, double mu, double eps);

// Throws DataError if the sample is not finite or has the wrong dimension.
void check_sample(const Sample& s, std::size_t dim);

class RlsLearner final : public Learner {
 public:
  RlsLearner(std::size_t dim, double r);

  std::string name() const override { return "rls"; }
  std::size_t dim() const noexcept override { return state_.w.size(); }
  std::int64_t steps() const noexcept override { return state_.t; }
  double predict(const Vector& x) override;
  void update(const Vector& x, double y) override;
  Vector weights() const override { return state_.w; }
  SymMatrix covariance() const override { return state_.sigma; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<RlsLearner>(*this); }

  const LinearState& state() const noexcept { return state_; }

 private:
  LinearState state_;
  double r_;
};

class CrRlsLearner final : public Learner {
 public:
  CrRlsLearner(std::size_t dim, double r, std::optional<std::int64_t> reset_period);

  std::string name() const override { return "crrls"; }
  std::size_t dim() const noexcept override { return state_.w.size(); }
  std::int64_t steps() const noexcept override { return state_.t; }
  double predict(const Vector& x) override;
  void update(const Vector& x, double y) override;
  Vector weights() const override { return state_.w; }
  SymMatrix covariance() const override { return state_.sigma; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<CrRlsLearner>(*this); }

  const LinearState& state() const noexcept { return state_; }

 private:
  LinearState state_;
  double r_;
  std::optional<std::int64_t> reset_period_;
};

class AarLearner final : public Learner {
 public:
  AarLearner(std::size_t dim, double b);

  std::string name() const override { return "aar"; }
  std::size_t dim() const noexcept override { return state_.w.size(); }
  std::int64_t steps() const noexcept override { return state_.t; }
  double predict(const Vector& x) override;
  void update(const Vector& x, double y) override;
  Vector weights() const override { return state_.w; }
  SymMatrix covariance() const override { return state_.sigma; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<AarLearner>(*this); }

  const LinearState& state() const noexcept { return state_; }

 private:
  LinearState state_;
  double b_;
};

class ArowrLearner final : public Learner {
 public:
  ArowrLearner(std::size_t dim, double r);

  std::string name() const override { return "arowr"; }
  std::size_t dim() const noexcept override { return state_.w.size(); }
  std::int64_t steps() const noexcept override { return state_.t; }
  double predict(const Vector& x) override;
  void update(const Vector& x, double y) override;
  Vector weights() const override { return state_.w; }
  SymMatrix covariance() const override { return state_.sigma; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<ArowrLearner>(*this); }

  const LinearState& state() const noexcept { return state_; }

 private:
  LinearState state_;
  double r_;
};

// First-order normalized LMS. It has no second-order matrix; covariance()
// reports the identity.
class NlmsLearner final : public Learner {
 public:
  NlmsLearner(std::size_t dim, double mu, double eps);

  std::string name() const override { return "nlms"; }
  std::size_t dim() const noexcept override { return state_.w.size(); }
  std::int64_t steps() const noexcept override { return state_.t; }
  double predict(const Vector& x) override;
  void update(const Vector& x, double y) override;
  Vector weights() const override { return state_.w; }
  SymMatrix covariance() const override { return state_.sigma; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<NlmsLearner>(*this); }

  const LinearState& state() const noexcept { return state_; }

 private:
  LinearState state_;
  double mu_;
  double eps_;
};

}  // namespace driftreg
