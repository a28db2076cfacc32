#include "driftreg/arcor.hpp"

#include <cmath>
#include <string>

#include "driftreg/error.hpp"
#include "driftreg/learners.hpp"
#include "driftreg/tolerances.hpp"

namespace driftreg {

// ---------------------------------------------------------------- schedule

LambdaSchedule LambdaSchedule::polynomial(double q) {
  if (!std::isfinite(q) || q == 0.0) throw InvalidArgument("polynomial schedule needs finite q != 0");
  LambdaSchedule s;
  s.kind_ = Kind::polynomial;
  s.q_ = q;
  return s;
}

LambdaSchedule LambdaSchedule::explicit_list(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("explicit schedule must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0 && values[i] < 1.0))
      throw InvalidArgument("schedule entries must lie in (0, 1)");
    if (i > 0 && values[i] > values[i - 1])
      throw InvalidArgument("schedule entries must be nonincreasing");
  }
  LambdaSchedule s;
  s.kind_ = Kind::explicit_list;
  s.values_ = std::move(values);
  return s;
}

LambdaSchedule LambdaSchedule::constant(double value) {
  LambdaSchedule s = explicit_list({value});
  s.repeat_last_ = true;
  return s;
}

LambdaSchedule LambdaSchedule::zero() { return LambdaSchedule{}; }

double LambdaSchedule::value(std::int64_t i) const {
  if (i < 1) throw InvalidArgument("schedule index must be >= 1");
  switch (kind_) {
    case Kind::polynomial:
      return 1.0 / (std::pow(static_cast<double>(i), q_ - 1.0) + 1.0);
    case Kind::explicit_list: {
      const auto idx = static_cast<std::size_t>(i - 1);
      if (idx < values_.size()) return values_[idx];
      if (repeat_last_) return values_.back();
      throw InvalidArgument("schedule index " + std::to_string(i) + " past end of explicit list");
    }
    case Kind::zero:
      return 0.0;
  }
  return 0.0;
}

double lambda_value(const LambdaSchedule& schedule, std::int64_t i) { return schedule.value(i); }

double choose_q(std::int64_t horizon, double drift_v1) {
  if (horizon < 2) throw InvalidArgument("choose_q: horizon T must be >= 2");
  if (!(drift_v1 > 0.0) || !std::isfinite(drift_v1))
    throw InvalidArgument("choose_q: drift V1 must be positive");
  if (drift_v1 == 1.0) throw InvalidArgument("choose_q: V1 = 1 leaves the drift exponent undefined");
  const double log_t = std::log(static_cast<double>(horizon));
  const double denom = log_t + std::log(drift_v1);
  if (denom == 0.0) throw InvalidArgument("choose_q: V1 = 1/T makes q unbounded");
  return 2.0 * log_t / denom;
}

void ArcorConfig::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("ARCOR r must be positive");
  if (!(radius > 0.0)) throw InvalidArgument("ARCOR radius R_B must be positive");
  if (schedule.kind() != LambdaSchedule::Kind::zero && !(schedule.value(1) < 1.0))
    throw InvalidArgument("ARCOR requires Lambda_1 < 1");
}

ArcorState ArcorState::initial(std::size_t dim) {
  if (dim == 0) throw InvalidArgument("dimension must be at least 1");
  return ArcorState{Vector(dim), SymMatrix::identity(dim), 1, 0, {}};
}

// ---------------------------------------------------------------- steps

SymMatrix candidate_sigma(const SymMatrix& sigma_prev, const Vector& x, double r) {
  if (x.size() != sigma_prev.dim()) throw DimensionMismatch("candidate_sigma", sigma_prev.dim(), x.size());
  if (!(r > 0.0)) throw InvalidArgument("candidate_sigma: r must be positive");
  const Vector g = sigma_prev * x;
  return rank_one_update(sigma_prev, -1.0 / (r + dot(x, g)), g);
}

ResetDecision reset_check(const SymMatrix& sigma_tilde, const LambdaSchedule& schedule,
                          std::int64_t segment) {
  const double floor = schedule.value(segment);
  if (floor <= 0.0) return {sigma_tilde, segment, false};
  // A successful factorization of Sigma~ - Lambda I already certifies
  // lambda_min > Lambda; the eigenvalue test decides the remaining cases.
  SymMatrix shifted = sigma_tilde;
  shifted.add_diagonal(-floor);
  bool keep = is_positive_definite(shifted);
  if (!keep) keep = min_eigenvalue(sigma_tilde) >= floor;
  if (keep) return {sigma_tilde, segment, false};
  return {SymMatrix::identity(sigma_tilde.dim()), segment + 1, true};
}

Projection project_to_ball(const Vector& w_tilde, const SymMatrix& sigma, double radius) {
  if (w_tilde.size() != sigma.dim()) throw DimensionMismatch("project_to_ball", sigma.dim(), w_tilde.size());
  if (!(radius > 0.0)) throw InvalidArgument("project_to_ball: radius must be positive");
  const double wnorm = norm(w_tilde);
  if (wnorm <= radius) return {w_tilde, 0.0};

  const SymEigen eig = eig_sym(sigma);
  const double lmin = eig.values[0];
  if (!(lmin > 0.0)) throw NotPositiveDefinite("project_to_ball: Sigma is not positive definite");

  const std::size_t d = w_tilde.size();
  const Vector u = eig.vectors.transposed() * w_tilde;
  const auto shrunk_norm = [&](double alpha) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double v = u[j] / (1.0 + alpha * eig.values[j]);
      s += v * v;
    }
    return std::sqrt(s);
  };

  // f(alpha) = |(I + alpha Lambda)^{-1} u| decreases in alpha; at hi it is <= radius.
  double lo = 0.0;
  double hi = (norm(u) / radius - 1.0) / lmin;
  while (shrunk_norm(hi) > radius) hi *= 2.0;  // guards rounding in the bracket
  for (int it = 0; it < tol::projection_max_iterations; ++it) {
    if (radius - shrunk_norm(hi) <= tol::projection_relative * radius) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (shrunk_norm(mid) > radius) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  Vector shrunk(d);
  for (std::size_t j = 0; j < d; ++j) shrunk[j] = u[j] / (1.0 + hi * eig.values[j]);
  return {eig.vectors * shrunk, hi};
}

double arcor_step(ArcorState& state, const Sample& s, const ArcorConfig& config) {
  check_sample(s, state.w.size());
  const double yhat = dot(s.x, state.w);

  const Vector g = state.sigma * s.x;
  const double denom = config.r + dot(s.x, g);
  SymMatrix sigma_tilde = rank_one_update(state.sigma, -1.0 / denom, g);
  ResetDecision decision = reset_check(sigma_tilde, config.schedule, state.segment);

  Vector w_tilde = state.w;
  axpy((s.y - yhat) / denom, g, w_tilde);

  ++state.t;
  state.sigma = std::move(decision.sigma);
  state.segment = decision.segment;
  if (decision.reset) state.resets.push_back(state.t);
  state.w = project_to_ball(w_tilde, state.sigma, config.radius).w;
  return yhat;
}

std::vector<std::int64_t> segment_lengths(const std::vector<std::int64_t>& resets,
                                          std::int64_t total) {
  std::vector<std::int64_t> lengths;
  std::int64_t start = 0;
  for (std::int64_t r : resets) {
    if (r <= start || r > total) throw InvalidArgument("reset steps must be increasing and within the run");
    lengths.push_back(r - start);
    start = r;
  }
  if (total > start || lengths.empty()) lengths.push_back(total - start);
  return lengths;
}

// ---------------------------------------------------------------- learner

ArcorLearner::ArcorLearner(std::size_t dim, ArcorConfig config)
    : state_(ArcorState::initial(dim)), config_(std::move(config)) {
  config_.validate();
}

double ArcorLearner::predict(const Vector& x) {
  if (x.size() != dim()) throw DimensionMismatch("learner input", dim(), x.size());
  if (!all_finite(x)) throw DataError("non-finite input vector");
  return dot(x, state_.w);
}

void ArcorLearner::update(const Vector& x, double y) { arcor_step(state_, Sample{x, y}, config_); }

}  // namespace driftreg
