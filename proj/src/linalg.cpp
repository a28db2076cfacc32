#include "driftreg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "driftreg/error.hpp"
#include "driftreg/simd/kernels.hpp"
#include "driftreg/tolerances.hpp"

namespace driftreg {
namespace {

void require_same(const char* what, std::size_t expected, std::size_t got) {
  if (expected != got) throw DimensionMismatch(what, expected, got);
}

}  // namespace

// ---------------------------------------------------------------- Vector

Vector Vector::basis(std::size_t n, std::size_t k) {
  if (k >= n) throw InvalidArgument("basis index out of range");
  Vector v(n);
  v[k] = 1.0;
  return v;
}

Vector& Vector::operator+=(const Vector& o) {
  require_same("vector add", size(), o.size());
  for (std::size_t i = 0; i < size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  require_same("vector subtract", size(), o.size());
  for (std::size_t i = 0; i < size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Vector& Vector::operator*=(double s) noexcept {
  for (double& x : v_) x *= s;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector a) { return a *= s; }

double dot(const Vector& a, const Vector& b) {
  require_same("dot", a.size(), b.size());
  return simd::kernels().dot(a.data(), b.data(), a.size());
}

double squared_norm(const Vector& a) { return simd::kernels().dot(a.data(), a.data(), a.size()); }

double norm(const Vector& a) { return std::sqrt(squared_norm(a)); }

void axpy(double alpha, const Vector& x, Vector& y) {
  require_same("axpy", y.size(), x.size());
  simd::kernels().axpy(alpha, x.data(), y.data(), x.size());
}

bool all_finite(const Vector& a) noexcept {
  return std::all_of(a.begin(), a.end(), [](double x) { return std::isfinite(x); });
}

// ---------------------------------------------------------------- Matrix

Vector Matrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same("matrix product", a.cols(), b.rows());
  Matrix c(a.rows(), b.cols());
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) k.axpy(a(i, l), b.row(l), c.row(i), b.cols());
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  require_same("matrix-vector product", a.cols(), x.size());
  Vector y(a.rows());
  simd::kernels().gemv(a.data(), x.data(), y.data(), a.rows(), a.cols());
  return y;
}

// ---------------------------------------------------------------- SymMatrix

SymMatrix SymMatrix::identity(std::size_t d, double scale) {
  SymMatrix m(d);
  m.add_diagonal(scale);
  return m;
}

SymMatrix SymMatrix::diagonal(const Vector& diag) {
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.a_[i * m.d_ + i] = diag[i];
  return m;
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t d = rows.size();
  SymMatrix m(d);
  std::size_t i = 0;
  for (const auto& r : rows) {
    require_same("matrix row", d, r.size());
    std::copy(r.begin(), r.end(), m.a_.begin() + static_cast<std::ptrdiff_t>(i * d));
    ++i;
  }
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r + 1; c < d; ++c)
      if (m(r, c) != m(c, r)) throw InvalidArgument("matrix rows are not symmetric");
  return m;
}

SymMatrix SymMatrix::symmetric_part(const Matrix& m) {
  require_same("symmetric part", m.rows(), m.cols());
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

void SymMatrix::add_diagonal(double value) noexcept {
  for (std::size_t i = 0; i < d_; ++i) a_[i * d_ + i] += value;
}

SymMatrix& SymMatrix::operator*=(double s) noexcept {
  for (double& x : a_) x *= s;
  return *this;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  require_same("matrix add", d_, o.d_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  require_same("matrix subtract", d_, o.d_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

void SymMatrix::rank_one_update(double beta, const Vector& x) {
  require_same("rank-one update", d_, x.size());
  if (beta == 0.0) return;
  simd::kernels().ger(beta, x.data(), x.data(), a_.data(), d_, d_);
  mirror_upper();
}

void SymMatrix::mirror_upper() noexcept {
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = i + 1; j < d_; ++j) a_[j * d_ + i] = a_[i * d_ + j];
}

Matrix SymMatrix::to_matrix() const {
  Matrix m(d_, d_);
  std::copy(a_.begin(), a_.end(), m.data());
  return m;
}

bool SymMatrix::all_finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](double x) { return std::isfinite(x); });
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

Vector operator*(const SymMatrix& a, const Vector& x) {
  require_same("matrix-vector product", a.dim(), x.size());
  Vector y(a.dim());
  simd::kernels().gemv(a.data(), x.data(), y.data(), a.dim(), a.dim());
  return y;
}

double quad_form(const SymMatrix& a, const Vector& x) {
  require_same("quadratic form", a.dim(), x.size());
  return dot(x, a * x);
}

SymMatrix rank_one_update(SymMatrix a, double beta, const Vector& x) {
  a.rank_one_update(beta, x);
  return a;
}

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
  require_same("matrix difference", a.dim(), b.dim());
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim() * a.dim(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

// ---------------------------------------------------------------- Cholesky

Cholesky::Cholesky(const SymMatrix& a) : d_(a.dim()), l_(a.dim() * a.dim(), 0.0) {
  if (!a.all_finite()) throw NotPositiveDefinite("Cholesky: non-finite matrix entry");
  double scale = 1.0;
  for (std::size_t i = 0; i < d_; ++i) scale = std::max(scale, std::abs(a(i, i)));
  const double floor = tol::cholesky_pivot * scale;
  const auto& k = simd::kernels();
  for (std::size_t j = 0; j < d_; ++j) {
    double* lj = l_.data() + j * d_;
    const double pivot = a(j, j) - k.dot(lj, lj, j);
    if (!(pivot > floor)) {
      throw NotPositiveDefinite("Cholesky: pivot " + std::to_string(pivot) + " at index " +
                                std::to_string(j) + " is not positive");
    }
    const double ljj = std::sqrt(pivot);
    lj[j] = ljj;
    for (std::size_t i = j + 1; i < d_; ++i) {
      double* li = l_.data() + i * d_;
      li[j] = (a(i, j) - k.dot(li, lj, j)) / ljj;
    }
  }
}

Vector Cholesky::solve(const Vector& b) const {
  require_same("Cholesky solve", d_, b.size());
  const auto& k = simd::kernels();
  // L y = b
  Vector y(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    const double* li = l_.data() + i * d_;
    y[i] = (b[i] - k.dot(li, y.data(), i)) / li[i];
  }
  // L^T z = y, column-oriented so each step touches a contiguous row of L
  for (std::size_t i = d_; i-- > 0;) {
    const double* li = l_.data() + i * d_;
    y[i] /= li[i];
    k.axpy(-y[i], li, y.data(), i);
  }
  return y;
}

SymMatrix Cholesky::inverse() const {
  Matrix cols(d_, d_);
  for (std::size_t j = 0; j < d_; ++j) {
    const Vector z = solve(Vector::basis(d_, j));
    for (std::size_t i = 0; i < d_; ++i) cols(i, j) = z[i];
  }
  return SymMatrix::symmetric_part(cols);
}

double Cholesky::log_det() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < d_; ++i) s += std::log(l_[i * d_ + i]);
  return 2.0 * s;
}

bool is_positive_definite(const SymMatrix& a) noexcept {
  try {
    Cholesky c(a);
    return true;
  } catch (const NotPositiveDefinite&) {
    return false;
  }
}

Vector spd_solve(const SymMatrix& a, const Vector& b) {
  require_same("SPD solve", a.dim(), b.size());
  return Cholesky(a).solve(b);
}

SymMatrix spd_inverse(const SymMatrix& a) { return Cholesky(a).inverse(); }

// ---------------------------------------------------------------- Jacobi

SymEigen eig_sym(const SymMatrix& a) {
  const std::size_t d = a.dim();
  if (!a.all_finite()) throw NumericalError("eig_sym: non-finite matrix entry");
  std::vector<double> m(a.data(), a.data() + d * d);
  Matrix vt(d, d);  // rows accumulate the eigenvectors
  for (std::size_t i = 0; i < d; ++i) vt(i, i) = 1.0;

  const auto& k = simd::kernels();
  double total = 0.0;
  for (double x : m) total += x * x;
  const double target = tol::jacobi_off_diagonal * std::sqrt(total);
  const std::size_t max_sweeps = static_cast<std::size_t>(tol::jacobi_sweep_factor) * d * d;

  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off += 2.0 * m[p * d + q] * m[p * d + q];
    if (std::sqrt(off) <= target) break;

    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = m[p * d + q];
        if (apq == 0.0) continue;
        const double app = m[p * d + p];
        const double aqq = m[q * d + q];
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        if (t == 0.0) continue;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        k.rot(m.data() + p * d, m.data() + q * d, d, c, s);
        m[p * d + p] = app - t * apq;
        m[q * d + q] = aqq + t * apq;
        m[p * d + q] = 0.0;
        m[q * d + p] = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
          if (r == p || r == q) continue;
          m[r * d + p] = m[p * d + r];
          m[r * d + q] = m[q * d + r];
        }
        k.rot(vt.row(p), vt.row(q), d, c, s);
      }
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return m[x * d + x] < m[y * d + y]; });
  SymEigen out{Vector(d), Matrix(d, d)};
  for (std::size_t col = 0; col < d; ++col) {
    const std::size_t src = order[col];
    out.values[col] = m[src * d + src];
    for (std::size_t i = 0; i < d; ++i) out.vectors(i, col) = vt(src, i);
  }
  return out;
}

Vector eigenvalues(const SymMatrix& a) { return eig_sym(a).values; }

double min_eigenvalue(const SymMatrix& a) {
  if (a.dim() == 0) throw InvalidArgument("min_eigenvalue of empty matrix");
  return eig_sym(a).values[0];
}

double max_eigenvalue(const SymMatrix& a) {
  if (a.dim() == 0) throw InvalidArgument("max_eigenvalue of empty matrix");
  return eig_sym(a).values[a.dim() - 1];
}

double clip(double x, double y) {
  if (!(y > 0.0)) throw InvalidArgument("clip bound must be positive");
  return std::copysign(std::min(std::abs(x), y), x);
}

}  // namespace driftreg
