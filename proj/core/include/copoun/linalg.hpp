#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace copoun {

/// Small dense row-major matrix. Sized for information matrices (<= ~10x10).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  Matrix transposed() const;

  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
  friend std::vector<double> operator*(const Matrix& lhs, std::span<const double> rhs);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Lower-triangular Cholesky factor L with A = L L^T.
/// Throws NotPositiveDefiniteError on a non-positive pivot.
Matrix cholesky(const Matrix& a);

Matrix solve_spd(const Matrix& a, const Matrix& b);
std::vector<double> solve_spd(const Matrix& a, std::span<const double> b);
Matrix inverse_spd(const Matrix& a);

double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace copoun
