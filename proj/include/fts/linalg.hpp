#ifndef FTS_LINALG_HPP
#define FTS_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fts {

/// Small dense row-major matrix. Sized for system matrices (a handful of
/// states), not for large-scale linear algebra.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  std::span<const double> data() const { return data_; }
  bool all_finite() const;

  /// y += A x
  void accumulate_product(std::span<const double> x, std::span<double> y) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Largest singular value via power iteration on the Gram matrix (the
/// smaller of A^T A and A A^T). The iteration stops once the Rayleigh
/// quotient is certified by the residual bound |lambda_max - rho| <= ||Gv -
/// rho v||, which holds for symmetric G regardless of the spectral gap.
///
/// Throws std::invalid_argument on non-finite entries and std::runtime_error
/// if the certificate is not reached within the iteration budget.
double spectral_norm(const Matrix& a, double rel_tol = 1e-12,
                     std::size_t max_iters = 2000000);

}  // namespace fts

#endif  // FTS_LINALG_HPP
