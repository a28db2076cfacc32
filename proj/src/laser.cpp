#include "driftreg/laser.hpp"

#include <algorithm>
#include <cmath>

#include "driftreg/error.hpp"
#include "driftreg/learners.hpp"

namespace driftreg {

void LaserConfig::validate() const {
  if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("LASER b must be positive and finite");
  if (!(c > b)) throw InvalidArgument("LASER requires 0 < b < c");
  if (y_bound && !(*y_bound > 0.0)) throw InvalidArgument("LASER label bound Y must be positive");
}

LaserState LaserState::initial(std::size_t dim, const LaserConfig& config) {
  if (dim == 0) throw InvalidArgument("dimension must be at least 1");
  config.validate();
  // D_0 is chosen so that (D_0^{-1} + I/c)^{-1} = b I.
  const double d0 = config.infinite_c() ? config.b : config.b * config.c / (config.c - config.b);
  return LaserState{SymMatrix::identity(dim, d0), Vector(dim), 0.0, 0};
}

LaserStepTerms laser_terms(const LaserState& state, const Vector& x, const LaserConfig& config) {
  const std::size_t dim = state.e.size();
  if (x.size() != dim) throw DimensionMismatch("LASER input", dim, x.size());
  if (!all_finite(x)) throw DataError("non-finite input vector");

  if (state.t == 0) {
    // First round: D_1 = b I + x x^T and e_0 = 0.
    SymMatrix d1 = SymMatrix::identity(dim, config.b);
    d1.rank_one_update(1.0, x);
    return {std::move(d1), Vector(dim), 0.0};
  }

  SymMatrix interpolated;
  Vector e_interp;
  if (config.infinite_c()) {
    interpolated = state.d;
    e_interp = state.e;
  } else {
    const double inv_c = 1.0 / config.c;
    SymMatrix d_inv = spd_inverse(state.d);
    d_inv.add_diagonal(inv_c);
    interpolated = spd_inverse(d_inv);  // (D^{-1} + I/c)^{-1}
    SymMatrix shrink = inv_c * state.d;
    shrink.add_diagonal(1.0);
    e_interp = spd_solve(shrink, state.e);  // (I + D/c)^{-1} e
  }
  interpolated.rank_one_update(1.0, x);
  const double yhat = dot(x, spd_solve(interpolated, e_interp));
  return {std::move(interpolated), std::move(e_interp), yhat};
}

double laser_predict(const LaserState& state, const Vector& x, const LaserConfig& config) {
  const double yhat = laser_terms(state, x, config).yhat;
  return config.y_bound ? clip(yhat, *config.y_bound) : yhat;
}

namespace {

void apply_update(LaserState& state, const Sample& s, const LaserConfig& config, LaserStepTerms terms) {
  if (config.track_f) {
    // e^T (cI + D)^{-1} e = e^T (I + D/c)^{-1} e / c
    const double drop = (state.t == 0 || config.infinite_c()) ? 0.0 : dot(state.e, terms.e_interpolated) / config.c;
    state.f = state.f - drop + s.y * s.y;
  }
  state.d = std::move(terms.d_next);
  state.e = std::move(terms.e_interpolated);
  axpy(s.y, s.x, state.e);
  ++state.t;
}

}  // namespace

void laser_update(LaserState& state, const Sample& s, const LaserConfig& config) {
  check_sample(s, state.e.size());
  apply_update(state, s, config, laser_terms(state, s.x, config));
}

double laser_step(LaserState& state, const Sample& s, const LaserConfig& config) {
  check_sample(s, state.e.size());
  LaserStepTerms terms = laser_terms(state, s.x, config);
  const double yhat = config.y_bound ? clip(terms.yhat, *config.y_bound) : terms.yhat;
  apply_update(state, s, config, std::move(terms));
  return yhat;
}

Vector laser_weights(const LaserState& state) {
  if (state.t == 0) return Vector(state.e.size());
  return spd_solve(state.d, state.e);
}

SymMatrix laser_sigma(const LaserState& state, const LaserConfig& config) {
  if (state.t == 0) {
    const double scale = config.infinite_c() ? 1.0 / config.b : (config.c - config.b) / (config.b * config.c);
    return SymMatrix::identity(state.e.size(), scale);
  }
  return spd_inverse(state.d);
}

double laser_predict_shrinkage(const LaserState& state, const Vector& x, const LaserConfig& config) {
  if (x.size() != state.e.size()) throw DimensionMismatch("LASER input", state.e.size(), x.size());
  SymMatrix sigma = laser_sigma(state, config);
  if (!config.infinite_c()) sigma.add_diagonal(1.0 / config.c);
  return dot(x, laser_weights(state)) / (1.0 + quad_form(sigma, x));
}

double laser_eigenvalue_cap(double x_bound, double b, double c) {
  const double x2 = x_bound * x_bound;
  if (std::isinf(c)) return std::numeric_limits<double>::infinity();
  return std::max((3.0 * x2 + std::sqrt(x2 * x2 + 4.0 * x2 * c)) / 2.0, b + x2);
}

LowDriftTuning tune_c_low_drift(std::int64_t horizon, double y_bound, std::int64_t dim,
                                double x_bound, double drift_v2, double b) {
  if (horizon <= 0 || !(y_bound > 0.0) || dim <= 0 || !(x_bound > 0.0) || !(drift_v2 > 0.0) || !(b > 0.0))
    throw InvalidArgument("tune_c_low_drift: all arguments must be positive");
  const double scale = std::sqrt(2.0) * static_cast<double>(horizon) * y_bound * y_bound *
                       static_cast<double>(dim) * x_bound;
  const double x2 = x_bound * x_bound;
  const double mu = std::max(9.0 / 8.0 * x2, (b + x2) * (b + x2) / (8.0 * x2));
  return {std::cbrt((scale / drift_v2) * (scale / drift_v2)), drift_v2 <= scale / std::pow(mu, 1.5)};
}

double tune_c_high_drift(std::int64_t horizon, double y_bound, std::int64_t dim, double x_bound,
                         double b, double drift_v2) {
  if (horizon <= 0 || !(y_bound > 0.0) || dim <= 0 || !(x_bound > 0.0) || !(drift_v2 > 0.0) || !(b > 0.0))
    throw InvalidArgument("tune_c_high_drift: all arguments must be positive");
  const double x2 = x_bound * x_bound;
  const double m = std::max(3.0 * x2, b + x2);
  return std::sqrt(y_bound * y_bound * static_cast<double>(dim) * m * static_cast<double>(horizon) / drift_v2);
}

// ---------------------------------------------------------------- learner

LaserLearner::LaserLearner(std::size_t dim, LaserConfig config)
    : state_(LaserState::initial(dim, config)), config_(std::move(config)) {}

double LaserLearner::predict(const Vector& x) {
  LaserStepTerms terms = laser_terms(state_, x, config_);
  const double yhat = config_.y_bound ? clip(terms.yhat, *config_.y_bound) : terms.yhat;
  cached_.emplace(x, std::move(terms));
  return yhat;
}

void LaserLearner::update(const Vector& x, double y) {
  const Sample s{x, y};
  check_sample(s, dim());
  if (cached_ && cached_->first == x) {
    apply_update(state_, s, config_, std::move(cached_->second));
  } else {
    apply_update(state_, s, config_, laser_terms(state_, x, config_));
  }
  cached_.reset();
}

}  // namespace driftreg
