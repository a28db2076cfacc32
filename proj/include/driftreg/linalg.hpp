#pragma once

// Small dense linear algebra for the learners: vectors, symmetric matrices,
// Cholesky, cyclic Jacobi eigendecomposition. Intended for d up to a few
// hundred; inner loops go through the SIMD kernel table.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace driftreg {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double value = 0.0) : v_(n, value) {}
  Vector(std::initializer_list<double> values) : v_(values) {}
  explicit Vector(std::vector<double> values) : v_(std::move(values)) {}

  static Vector basis(std::size_t n, std::size_t k);

  std::size_t size() const noexcept { return v_.size(); }
  bool empty() const noexcept { return v_.empty(); }

  double& operator[](std::size_t i) noexcept { return v_[i]; }
  double operator[](std::size_t i) const noexcept { return v_[i]; }

  double* data() noexcept { return v_.data(); }
  const double* data() const noexcept { return v_.data(); }
  std::span<double> span() noexcept { return v_; }
  std::span<const double> span() const noexcept { return v_; }

  auto begin() noexcept { return v_.begin(); }
  auto end() noexcept { return v_.end(); }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }

  const std::vector<double>& values() const noexcept { return v_; }

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(double s) noexcept;

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> v_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector a);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
double squared_norm(const Vector& a);
// y += alpha*x
void axpy(double alpha, const Vector& x, Vector& y);
bool all_finite(const Vector& a) noexcept;

// General dense row-major matrix. Used for eigenvectors and for the few
// non-symmetric products the tests need.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, value) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * cols_ + j]; }

  double* row(std::size_t i) noexcept { return a_.data() + i * cols_; }
  const double* row(std::size_t i) const noexcept { return a_.data() + i * cols_; }
  Vector column(std::size_t j) const;

  double* data() noexcept { return a_.data(); }
  const double* data() const noexcept { return a_.data(); }

  Matrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

// Dense symmetric matrix. Storage is full row-major; every mutating member
// writes both triangles so A(i,j) == A(j,i) holds bit-for-bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t d) : d_(d), a_(d * d, 0.0) {}

  static SymMatrix identity(std::size_t d, double scale = 1.0);
  static SymMatrix diagonal(const Vector& diag);
  // Throws InvalidArgument unless the rows form an exactly symmetric square.
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  // Symmetric part (M + M^T)/2 of a square matrix.
  static SymMatrix symmetric_part(const Matrix& m);

  std::size_t dim() const noexcept { return d_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * d_ + j]; }
  void set(std::size_t i, std::size_t j, double value) noexcept {
    a_[i * d_ + j] = value;
    a_[j * d_ + i] = value;
  }

  const double* row(std::size_t i) const noexcept { return a_.data() + i * d_; }
  const double* data() const noexcept { return a_.data(); }

  void add_diagonal(double value) noexcept;
  SymMatrix& operator*=(double s) noexcept;
  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);

  // In place A += beta*x*x^T.
  void rank_one_update(double beta, const Vector& x);

  Matrix to_matrix() const;
  bool all_finite() const noexcept;

  bool operator==(const SymMatrix&) const = default;

 private:
  void mirror_upper() noexcept;

  std::size_t d_ = 0;
  std::vector<double> a_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);

Vector operator*(const SymMatrix& a, const Vector& x);

double quad_form(const SymMatrix& a, const Vector& x);
SymMatrix rank_one_update(SymMatrix a, double beta, const Vector& x);
double max_abs_diff(const SymMatrix& a, const SymMatrix& b);

// Cholesky factor A = L L^T of a symmetric positive definite matrix.
class Cholesky {
 public:
  // Throws NotPositiveDefinite when a pivot is not safely positive.
  explicit Cholesky(const SymMatrix& a);

  std::size_t dim() const noexcept { return d_; }
  Vector solve(const Vector& b) const;
  SymMatrix inverse() const;
  double log_det() const noexcept;
  // Lower-triangular factor, row-major with zeros above the diagonal.
  const std::vector<double>& factor() const noexcept { return l_; }

 private:
  std::size_t d_;
  std::vector<double> l_;
};

bool is_positive_definite(const SymMatrix& a) noexcept;
Vector spd_solve(const SymMatrix& a, const Vector& b);
SymMatrix spd_inverse(const SymMatrix& a);

struct SymEigen {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns, vectors.column(k) pairs with values[k]
};

SymEigen eig_sym(const SymMatrix& a);
Vector eigenvalues(const SymMatrix& a);
double min_eigenvalue(const SymMatrix& a);
double max_eigenvalue(const SymMatrix& a);

// sign(x) * min(|x|, y); y must be positive.
double clip(double x, double y);

}  // namespace driftreg
