#pragma once

// Dense kernels shared by every other module: OLS, coefficients of
// determination, symmetric eigendecomposition, correlation matrices and
// Cholesky factors. Sizes here are small (a few dozen columns at most), so
// everything is direct and deterministic.

#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace eemx {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative pivot below which a Gram matrix is treated as singular.
inline constexpr double kRankTolerance = 1e-10;

struct OlsFit {
  Vector coefficients;
  Vector fitted;
  Vector residuals;
  double rss = 0.0;
  double rse = 0.0;  // sqrt(rss / (N - p))
  double cd = 0.0;   // coefficient of determination against mean(response)
  /// Diagonal of (X'X)^{-1}; multiply by rse^2 for coefficient variances.
  Vector variance_factors;
};

/// Least squares fit of `response` on the columns of `design` via the normal
/// equations, solved with a diagonally pivoted Cholesky factor of the
/// column-equilibrated Gram matrix.
OlsFit ols_fit(const Matrix& design, const Vector& response);

/// Coefficient of determination when column `target_col` is regressed on all
/// remaining columns of `design`. The design must contain an all-ones column,
/// which is always kept among the regressors.
double cd_of_regression(std::size_t target_col, const Matrix& design);

struct EigenDecomposition {
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // column j pairs with eigenvalues[j]
};

/// Cyclic Jacobi eigensolver. Eigenvalues come back in descending order and
/// each eigenvector is signed so its largest-magnitude entry is positive
/// (ties go to the lowest row index).
EigenDecomposition sym_eigen(const Matrix& symmetric);

/// Z'Z for columns that are already centred and scaled to unit norm.
Matrix correlation_matrix(const Matrix& standardized);

/// Lower-triangular L with L L' = spd.
Matrix cholesky_lower(const Matrix& spd);

// Small helpers used across modules.

Matrix select_columns(const Matrix& source, std::span<const std::size_t> columns);

/// True when every entry equals 1.0 exactly.
bool is_ones_column(const Matrix& design, std::size_t column);

/// Mean and population (1/N) standard deviation of a column.
double column_mean(const Vector& column);
double column_std(const Vector& column);

}  // namespace eemx
