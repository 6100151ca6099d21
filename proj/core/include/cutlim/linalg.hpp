#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cutlim {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  std::vector<std::vector<double>> to_rows() const;

  /// Largest |a_ij - a_ji|; requires a square matrix.
  double max_asymmetry() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::vector<double> multiply(const Matrix& a, std::span<const double> x);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix kronecker(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);

/// Full eigendecomposition of a symmetric matrix.
struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k belongs to values[k]; empty if not requested
  int sweeps = 0;
  double off_diagonal = 0.0;   // Frobenius norm of the remaining off-diagonal part
};

/// Cyclic Jacobi with threshold sweeps. Stops when the off-diagonal Frobenius
/// mass drops below `tol * max(1, ||A||_F)`. Eigenvectors are unit length with
/// the first component of magnitude > 1e-12 made positive.
SymmetricEigen jacobi_eigen(const Matrix& a, bool want_vectors = true,
                            double tol = 1e-10, int max_sweeps = 100);

/// Largest absolute eigenvalue (spectral norm for symmetric input).
double spectral_norm_symmetric(const Matrix& a);

}  // namespace cutlim
