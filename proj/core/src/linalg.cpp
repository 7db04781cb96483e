#include "copoun/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "copoun/error.hpp"

namespace copoun {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const double v = lhs(i, k);
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += v * rhs(k, j);
    }
  return out;
}

std::vector<double> operator*(const Matrix& lhs, std::span<const double> rhs) {
  if (lhs.cols_ != rhs.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  std::vector<double> out(lhs.rows_, 0.0);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) out[i] += lhs(i, k) * rhs[k];
  return out;
}

Matrix cholesky(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("cholesky: matrix must be square");
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag)) throw NotPositiveDefiniteError();
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

namespace {

// Solves L L^T x = b in place for one right-hand side.
void cholesky_substitute(const Matrix& l, std::span<double> x) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x[k];
    x[i] = s / l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
    x[i] = s / l(i, i);
  }
}

}  // namespace

std::vector<double> solve_spd(const Matrix& a, std::span<const double> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_spd: shape mismatch");
  const Matrix l = cholesky(a);
  std::vector<double> x(b.begin(), b.end());
  cholesky_substitute(l, x);
  return x;
}

Matrix solve_spd(const Matrix& a, const Matrix& b) {
  if (b.rows() != a.rows()) throw std::invalid_argument("solve_spd: shape mismatch");
  const Matrix l = cholesky(a);
  Matrix out(b.rows(), b.cols());
  std::vector<double> column(b.rows());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < b.rows(); ++r) column[r] = b(r, c);
    cholesky_substitute(l, column);
    for (std::size_t r = 0; r < b.rows(); ++r) out(r, c) = column[r];
  }
  return out;
}

Matrix inverse_spd(const Matrix& a) { return solve_spd(a, Matrix::identity(a.rows())); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

}  // namespace copoun
