#include "driftreg/learners.hpp"

#include <cmath>
#include <string>

#include "driftreg/error.hpp"

namespace driftreg {
namespace {

void check_input(const Vector& x, std::size_t dim) {
  if (x.size() != dim) throw DimensionMismatch("learner input", dim, x.size());
  if (!all_finite(x)) throw DataError("non-finite input vector");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive and finite");
}

void require_forgetting(double r) {
  if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("forgetting factor r must lie in (0, 1]");
}

// Shared second-order step: w += (y - x^T w) * Sigma x / (denom_offset + x^T Sigma x),
// then Sigma -= g g^T / (denom_offset + x^T Sigma x) with g = Sigma x.
void second_order_update(LinearState& state, const Sample& s, double denom_offset) {
  const Vector g = state.sigma * s.x;
  const double denom = denom_offset + dot(s.x, g);
  const double err = s.y - dot(s.x, state.w);
  axpy(err / denom, g, state.w);
  state.sigma.rank_one_update(-1.0 / denom, g);
  ++state.t;
}

}  // namespace

LinearState LinearState::initial(std::size_t dim, double sigma_scale) {
  if (dim == 0) throw InvalidArgument("dimension must be at least 1");
  return LinearState{Vector(dim), SymMatrix::identity(dim, sigma_scale), 0};
}

void check_sample(const Sample& s, std::size_t dim) {
  check_input(s.x, dim);
  if (!std::isfinite(s.y)) throw DataError("non-finite label");
}

double predict_linear(const LinearState& state, const Vector& x) { return dot(x, state.w); }

double rls_step(LinearState& state, const Sample& s, double r) {
  check_sample(s, state.w.size());
  const double yhat = predict_linear(state, s.x);
  second_order_update(state, s, r);
  // (r Sigma^{-1} + x x^T)^{-1} = (Sigma - g g^T / (r + x^T g)) / r
  if (r != 1.0) state.sigma *= 1.0 / r;
  return yhat;
}

double aar_step(LinearState& state, const Sample& s, double /*b*/) {
  // b only enters through the initial Sigma_0 = I / b.
  check_sample(s, state.w.size());
  const Vector g = state.sigma * s.x;
  const double yhat = dot(s.x, state.w) / (1.0 + dot(s.x, g));
  second_order_update(state, s, 1.0);
  return yhat;
}

double arowr_step(LinearState& state, const Sample& s, double r) {
  check_sample(s, state.w.size());
  const double yhat = predict_linear(state, s.x);
  second_order_update(state, s, r);
  return yhat;
}

double crrls_step(LinearState& state, const Sample& s, double r,
                  std::optional<std::int64_t> reset_period) {
  const double yhat = rls_step(state, s, r);
  if (reset_period && state.t % *reset_period == 0) {
    state.sigma = SymMatrix::identity(state.w.size());
  }
  return yhat;
}

double nlms_step(LinearState& state, const Sample& s, double mu, double eps) {
  check_sample(s, state.w.size());
  const double yhat = predict_linear(state, s.x);
  const double energy = eps + squared_norm(s.x);
  if (energy > 0.0) axpy(mu * (s.y - yhat) / energy, s.x, state.w);
  ++state.t;
  return yhat;
}

// ---------------------------------------------------------------- wrappers

RlsLearner::RlsLearner(std::size_t dim, double r) : state_(LinearState::initial(dim)), r_(r) {
  require_forgetting(r);
}

double RlsLearner::predict(const Vector& x) {
  check_input(x, dim());
  return predict_linear(state_, x);
}

void RlsLearner::update(const Vector& x, double y) { rls_step(state_, Sample{x, y}, r_); }

CrRlsLearner::CrRlsLearner(std::size_t dim, double r, std::optional<std::int64_t> reset_period)
    : state_(LinearState::initial(dim)), r_(r), reset_period_(reset_period) {
  require_forgetting(r);
  if (reset_period && *reset_period < 1) throw InvalidArgument("reset period T0 must be >= 1");
}

double CrRlsLearner::predict(const Vector& x) {
  check_input(x, dim());
  return predict_linear(state_, x);
}

void CrRlsLearner::update(const Vector& x, double y) {
  crrls_step(state_, Sample{x, y}, r_, reset_period_);
}

AarLearner::AarLearner(std::size_t dim, double b) : state_(LinearState::initial(dim, 1.0 / b)), b_(b) {
  require_positive(b, "AAR parameter b");
}

double AarLearner::predict(const Vector& x) {
  check_input(x, dim());
  return dot(x, state_.w) / (1.0 + quad_form(state_.sigma, x));
}

void AarLearner::update(const Vector& x, double y) { aar_step(state_, Sample{x, y}, b_); }

ArowrLearner::ArowrLearner(std::size_t dim, double r) : state_(LinearState::initial(dim)), r_(r) {
  require_positive(r, "AROWR parameter r");
}

double ArowrLearner::predict(const Vector& x) {
  check_input(x, dim());
  return predict_linear(state_, x);
}

void ArowrLearner::update(const Vector& x, double y) { arowr_step(state_, Sample{x, y}, r_); }

NlmsLearner::NlmsLearner(std::size_t dim, double mu, double eps)
    : state_(LinearState::initial(dim)), mu_(mu), eps_(eps) {
  if (!(mu > 0.0 && mu <= 2.0)) throw InvalidArgument("NLMS step size must lie in (0, 2]");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidArgument("NLMS regularizer must be >= 0");
}

double NlmsLearner::predict(const Vector& x) {
  check_input(x, dim());
  return predict_linear(state_, x);
}

void NlmsLearner::update(const Vector& x, double y) { nlms_step(state_, Sample{x, y}, mu_, eps_); }

}  // namespace driftreg
