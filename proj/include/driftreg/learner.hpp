#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "driftreg/linalg.hpp"
#include "driftreg/sample.hpp"

namespace driftreg {

// Common interface of every online regressor. The online protocol is:
// predict(x_t) is called first, then update(x_t, y_t) with the same input.
// Instances are single-threaded state machines; clone() yields an independent
// copy that may be moved to another thread.
class Learner {
 public:
  virtual ~Learner() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim() const noexcept = 0;
  // Number of completed updates.
  virtual std::int64_t steps() const noexcept = 0;

  virtual double predict(const Vector& x) = 0;
  virtual void update(const Vector& x, double y) = 0;

  // predict followed by update; returns the prediction.
  double step(const Sample& s) {
    const double yhat = predict(s.x);
    update(s.x, s.y);
    return yhat;
  }

  // Current weight vector w_t and second-order matrix Sigma_t.
  virtual Vector weights() const = 0;
  virtual SymMatrix covariance() const = 0;

  virtual std::unique_ptr<Learner> clone() const = 0;
};

}  // namespace driftreg
