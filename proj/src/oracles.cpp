#include "driftreg/oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "driftreg/error.hpp"

namespace driftreg::oracle {
namespace {

// Plain loops throughout: the oracles must not share arithmetic with the
// kernel-backed paths they check.
double plain_dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix dense_copy(const SymMatrix& a) {
  Matrix m(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  return m;
}

Matrix dense_inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n);
    e[j] = 1.0;
    const Vector col = dense_solve(a, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

Vector plain_matvec(const Matrix& a, const Vector& x) {
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<double> grid(double lo, double hi, double step) {
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-9));
  std::vector<double> g;
  g.reserve(n + 1);
  for (std::size_t k = 0; k < n; ++k) g.push_back(lo + static_cast<double>(k) * step);
  g.push_back(hi);
  return g;
}

}  // namespace

Vector dense_solve(Matrix a, Vector b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionMismatch("dense_solve", n, b.size());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == 0.0) throw NumericalError("dense_solve: singular system");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

Vector batch_ridge(std::span<const Sample> samples, double r, double reg) {
  if (samples.empty()) throw InvalidArgument("batch_ridge: need at least one sample");
  if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("batch_ridge: r must lie in (0, 1]");
  if (!(reg > 0.0)) throw InvalidArgument("batch_ridge: reg must be positive");
  const std::size_t d = samples.front().x.size();
  const std::size_t t = samples.size();
  Matrix a(d, d);
  Vector rhs(d);
  for (std::size_t i = 0; i < d; ++i) a(i, i) = reg * std::pow(r, static_cast<double>(t));
  for (std::size_t s = 0; s < t; ++s) {
    const Sample& smp = samples[s];
    if (smp.x.size() != d) throw DimensionMismatch("batch_ridge", d, smp.x.size());
    const double weight = std::pow(r, static_cast<double>(t - 1 - s));
    for (std::size_t i = 0; i < d; ++i) {
      rhs[i] += weight * smp.y * smp.x[i];
      for (std::size_t j = 0; j < d; ++j) a(i, j) += weight * smp.x[i] * smp.x[j];
    }
  }
  return dense_solve(std::move(a), std::move(rhs));
}

QuadraticProblem build_q_problem(std::span<const Sample> samples, double b, double c) {
  if (samples.empty()) throw InvalidArgument("Q problem needs at least one sample");
  if (!(b > 0.0) || !(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("Q problem needs b > 0 and finite c > 0");
  const std::size_t t = samples.size();
  const std::size_t d = samples.front().x.size();
  QuadraticProblem q{t, d, Matrix(t * d, t * d), Vector(t * d), 0.0};
  for (std::size_t s = 0; s < t; ++s) {
    const Sample& smp = samples[s];
    if (smp.x.size() != d) throw DimensionMismatch("Q problem", d, smp.x.size());
    const std::size_t o = s * d;
    // loss term (y - u^T x)^2 = u^T x x^T u - 2 y x^T u + y^2
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) q.hessian(o + i, o + j) += smp.x[i] * smp.x[j];
      q.linear[o + i] += smp.y * smp.x[i];
    }
    q.constant += smp.y * smp.y;
    if (s == 0)
      for (std::size_t i = 0; i < d; ++i) q.hessian(i, i) += b;
    if (s + 1 < t) {
      // c |u_{s+1} - u_s|^2
      const std::size_t p = o + d;
      for (std::size_t i = 0; i < d; ++i) {
        q.hessian(o + i, o + i) += c;
        q.hessian(p + i, p + i) += c;
        q.hessian(o + i, p + i) -= c;
        q.hessian(p + i, o + i) -= c;
      }
    }
  }
  return q;
}

QMinimum min_q_bruteforce(std::span<const Sample> samples, double b, double c, std::size_t max_stacked) {
  if (samples.empty()) throw InvalidArgument("min_q_bruteforce: need at least one sample");
  const std::size_t stacked = samples.size() * samples.front().x.size();
  if (stacked > max_stacked) throw InvalidArgument("min_q_bruteforce: t*d exceeds the size cap");
  const QuadraticProblem q = build_q_problem(samples, b, c);
  // Stationarity: H u = g; minimum value k - g^T u.
  const Vector u = dense_solve(q.hessian, q.linear);
  QMinimum out{q.constant - plain_dot(q.linear, u), {}};
  for (std::size_t s = 0; s < q.steps; ++s) {
    Vector us(q.dim);
    for (std::size_t i = 0; i < q.dim; ++i) us[i] = u[s * q.dim + i];
    out.argmin.push_back(std::move(us));
  }
  return out;
}

double minmax_predict_grid(const LaserState& state, const LaserConfig& config, const Vector& x,
                           double y_bound, double resolution) {
  if (!(y_bound > 0.0) || !(resolution > 0.0)) throw InvalidArgument("minmax grid: Y and resolution must be positive");
  const std::size_t d = state.e.size();
  if (x.size() != d) throw DimensionMismatch("minmax grid", d, x.size());

  // D_t and D'_{t-1} e_{t-1} rebuilt from the definitions with dense inverses.
  Matrix d_next(d, d);
  Vector carried(d);
  if (state.t == 0) {
    for (std::size_t i = 0; i < d; ++i) d_next(i, i) = config.b;
  } else if (config.infinite_c()) {
    d_next = dense_copy(state.d);
    carried = state.e;
  } else {
    Matrix d_inv = dense_inverse(dense_copy(state.d));
    for (std::size_t i = 0; i < d; ++i) d_inv(i, i) += 1.0 / config.c;
    d_next = dense_inverse(d_inv);
    Matrix shrink = dense_copy(state.d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) shrink(i, j) = shrink(i, j) / config.c + (i == j ? 1.0 : 0.0);
    carried = dense_solve(shrink, state.e);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) d_next(i, j) += x[i] * x[j];
  const Matrix d_next_inv = dense_inverse(d_next);

  // e(y)^T D^{-1} e(y) = k0 + 2 y k1 + y^2 k2 with e(y) = carried + y x.
  const Vector m_carried = plain_matvec(d_next_inv, carried);
  const Vector m_x = plain_matvec(d_next_inv, x);
  const double k0 = plain_dot(carried, m_carried);
  const double k1 = plain_dot(x, m_carried);
  const double k2 = plain_dot(x, m_x);
  const auto objective = [&](double yhat, double y) {
    return (y - yhat) * (y - yhat) + k0 + 2.0 * y * k1 + y * y * k2 - y * y;
  };

  const std::vector<double> values = grid(-y_bound, y_bound, resolution);
  double best = std::numeric_limits<double>::infinity();
  double best_yhat = 0.0;
  for (double yhat : values) {
    double worst = -std::numeric_limits<double>::infinity();
    for (double y : values) worst = std::max(worst, objective(yhat, y));
    if (worst < best) {
      best = worst;
      best_yhat = yhat;
    }
  }
  return best_yhat;
}

double mahalanobis_objective(const Vector& w, const Vector& w_tilde, const SymMatrix& sigma) {
  const Vector diff = w - w_tilde;
  const Matrix inv = dense_inverse(dense_copy(sigma));
  return plain_dot(diff, plain_matvec(inv, diff));
}

Vector projection_oracle(const Vector& w_tilde, const SymMatrix& sigma, double radius, double resolution) {
  if (w_tilde.size() != 2 || sigma.dim() != 2) throw InvalidArgument("projection_oracle supports d = 2 only");
  if (!(radius > 0.0) || !(resolution > 0.0)) throw InvalidArgument("projection_oracle: bad radius or resolution");
  if (std::hypot(w_tilde[0], w_tilde[1]) <= radius) return w_tilde;

  const double det = sigma(0, 0) * sigma(1, 1) - sigma(0, 1) * sigma(0, 1);
  if (!(det > 0.0) || !(sigma(0, 0) > 0.0)) throw NotPositiveDefinite("projection_oracle: Sigma is not SPD");
  const double i00 = sigma(1, 1) / det;
  const double i11 = sigma(0, 0) / det;
  const double i01 = -sigma(0, 1) / det;
  const auto objective = [&](double a, double b) {
    const double p = a - w_tilde[0];
    const double q = b - w_tilde[1];
    return i00 * p * p + 2.0 * i01 * p * q + i11 * q * q;
  };

  Vector best{0.0, 0.0};
  double best_value = objective(0.0, 0.0);
  const std::vector<double> radii = grid(0.0, radius, resolution * radius);
  const std::vector<double> angles = grid(0.0, 2.0 * std::numbers::pi, resolution);
  for (double rad : radii) {
    for (double ang : angles) {
      const double a = rad * std::cos(ang);
      const double b = rad * std::sin(ang);
      const double v = objective(a, b);
      if (v < best_value) {
        best_value = v;
        best = Vector{a, b};
      }
    }
  }
  return best;
}

}  // namespace driftreg::oracle
