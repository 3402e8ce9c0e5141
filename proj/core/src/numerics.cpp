#include "eemx/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "eemx/errors.hpp"

namespace eemx {
namespace {

// Diagonally pivoted Cholesky factor of a symmetric positive semi-definite
// matrix: P' G P = L L'. Fails with RankDeficient when a pivot drops below
// kRankTolerance times the largest diagonal entry.
class PivotedCholesky {
 public:
  explicit PivotedCholesky(const Matrix& gram) : l_(gram), perm_(gram.rows()) {
    const Eigen::Index p = gram.rows();
    std::iota(perm_.begin(), perm_.end(), Eigen::Index{0});
    const double scale = gram.diagonal().maxCoeff();
    if (!(scale > 0.0)) fail(ErrorCode::RankDeficient, "Gram matrix has no positive diagonal");
    const double tol = kRankTolerance * scale;

    for (Eigen::Index k = 0; k < p; ++k) {
      Eigen::Index best = k;
      for (Eigen::Index i = k + 1; i < p; ++i) {
        if (l_(i, i) > l_(best, best)) best = i;
      }
      if (l_(best, best) <= tol) {
        fail(ErrorCode::RankDeficient,
             "pivot " + std::to_string(l_(best, best)) + " below tolerance at column " +
                 std::to_string(perm_[best]));
      }
      if (best != k) {
        l_.row(k).swap(l_.row(best));
        l_.col(k).swap(l_.col(best));
        std::swap(perm_[k], perm_[best]);
      }
      const double pivot = std::sqrt(l_(k, k));
      l_(k, k) = pivot;
      for (Eigen::Index i = k + 1; i < p; ++i) l_(i, k) /= pivot;
      // Whole trailing block, since later pivots swap rows and columns.
      for (Eigen::Index j = k + 1; j < p; ++j) {
        for (Eigen::Index i = k + 1; i < p; ++i) l_(i, j) -= l_(i, k) * l_(j, k);
      }
    }
    l_.triangularView<Eigen::StrictlyUpper>().setZero();
  }

  Vector solve(const Vector& rhs) const {
    const Eigen::Index p = l_.rows();
    Vector permuted(p);
    for (Eigen::Index i = 0; i < p; ++i) permuted[i] = rhs[perm_[i]];
    const auto lower = l_.triangularView<Eigen::Lower>();
    Vector y = lower.solve(permuted);
    Vector z = lower.transpose().solve(y);
    Vector out(p);
    for (Eigen::Index i = 0; i < p; ++i) out[perm_[i]] = z[i];
    return out;
  }

  Vector inverse_diagonal() const {
    const Eigen::Index p = l_.rows();
    Vector diag(p);
    for (Eigen::Index j = 0; j < p; ++j) {
      Vector unit = Vector::Zero(p);
      unit[j] = 1.0;
      diag[j] = solve(unit)[j];
    }
    return diag;
  }

 private:
  Matrix l_;
  std::vector<Eigen::Index> perm_;
};

struct ScaledLeastSquares {
  Vector coefficients;
  Vector variance_factors;
};

// Solves min |y - X b| with X equilibrated to unit column norms first.
ScaledLeastSquares scaled_normal_equations(const Matrix& x, const Vector& y) {
  const Eigen::Index p = x.cols();
  Vector norms(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    norms[j] = x.col(j).norm();
    if (!(norms[j] > 0.0)) {
      fail(ErrorCode::RankDeficient, "column " + std::to_string(j) + " is identically zero");
    }
  }
  const Matrix xs = x * norms.cwiseInverse().asDiagonal();
  const Matrix gram = xs.transpose() * xs;
  const PivotedCholesky chol(gram);
  const Vector bs = chol.solve(xs.transpose() * y);
  return {bs.cwiseQuotient(norms), chol.inverse_diagonal().cwiseQuotient(norms.cwiseAbs2())};
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

void require_symmetric(const Matrix& m, double rel_tol, const char* what) {
  if (m.rows() != m.cols()) {
    fail(ErrorCode::NotSymmetric, std::string(what) + ": matrix is not square");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > rel_tol * scale) {
        fail(ErrorCode::NotSymmetric, std::string(what) + ": entries (" + std::to_string(i) +
                                          "," + std::to_string(j) + ") differ");
      }
    }
  }
}

}  // namespace

OlsFit ols_fit(const Matrix& design, const Vector& response) {
  const Eigen::Index n = design.rows();
  const Eigen::Index p = design.cols();
  if (response.size() != n) {
    fail(ErrorCode::DimensionMismatch, "response has " + std::to_string(response.size()) +
                                           " entries, design has " + std::to_string(n) + " rows");
  }
  if (p < 1 || n <= p) {
    fail(ErrorCode::SizeOutOfRange,
         "need N > p (N=" + std::to_string(n) + ", p=" + std::to_string(p) + ")");
  }
  if (!all_finite(design) || !response.allFinite()) {
    fail(ErrorCode::InvalidArgument, "non-finite entries in regression inputs");
  }

  const ScaledLeastSquares ls = scaled_normal_equations(design, response);
  OlsFit fit;
  fit.coefficients = ls.coefficients;
  fit.variance_factors = ls.variance_factors;
  fit.fitted = design * fit.coefficients;
  fit.residuals = response - fit.fitted;
  fit.rss = fit.residuals.squaredNorm();
  fit.rse = std::sqrt(fit.rss / static_cast<double>(n - p));
  const double sst = (response.array() - response.mean()).matrix().squaredNorm();
  fit.cd = sst > 0.0 ? std::clamp(1.0 - fit.rss / sst, 0.0, 1.0) : 0.0;
  return fit;
}

double cd_of_regression(std::size_t target_col, const Matrix& design) {
  const auto k = static_cast<Eigen::Index>(target_col);
  if (k >= design.cols()) {
    fail(ErrorCode::IndexOutOfRange, "target column " + std::to_string(target_col) +
                                         " outside design with " + std::to_string(design.cols()) +
                                         " columns");
  }
  bool has_intercept = false;
  std::vector<Eigen::Index> others;
  for (Eigen::Index j = 0; j < design.cols(); ++j) {
    if (j == k) continue;
    if (is_ones_column(design, static_cast<std::size_t>(j))) {
      has_intercept = true;
    } else {
      others.push_back(j);
    }
  }
  if (!has_intercept) {
    fail(ErrorCode::InvalidArgument, "regressor set lacks the intercept column");
  }

  // Centring every column removes the intercept from the problem (the
  // projection onto e commutes with the projection onto the regressor span).
  const Vector target = design.col(k).array() - design.col(k).mean();
  const double sst = target.squaredNorm();
  const double raw = design.col(k).squaredNorm();
  if (!(sst > 1e-24 * raw) || sst == 0.0) {
    fail(ErrorCode::ConstantTarget,
         "column " + std::to_string(target_col) + " is a multiple of the intercept");
  }
  if (others.empty()) return 0.0;

  Matrix centred(design.rows(), static_cast<Eigen::Index>(others.size()));
  for (std::size_t j = 0; j < others.size(); ++j) {
    const auto src = others[j];
    centred.col(static_cast<Eigen::Index>(j)) = design.col(src).array() - design.col(src).mean();
    const double c_norm = centred.col(static_cast<Eigen::Index>(j)).squaredNorm();
    if (!(c_norm > 1e-24 * design.col(src).squaredNorm())) {
      fail(ErrorCode::RankDeficient,
           "regressor column " + std::to_string(src) + " is a multiple of the intercept");
    }
  }
  const ScaledLeastSquares ls = scaled_normal_equations(centred, target);
  const double rss = (target - centred * ls.coefficients).squaredNorm();
  return std::clamp(1.0 - rss / sst, 0.0, 1.0);
}

EigenDecomposition sym_eigen(const Matrix& symmetric) {
  if (symmetric.rows() < 1) fail(ErrorCode::InvalidArgument, "empty matrix");
  if (!all_finite(symmetric)) fail(ErrorCode::InvalidArgument, "non-finite matrix entries");
  require_symmetric(symmetric, 1e-12, "sym_eigen");

  const Eigen::Index p = symmetric.rows();
  Matrix a = (symmetric + symmetric.transpose()) / 2.0;
  Matrix v = Matrix::Identity(p, p);

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p; ++i)
      for (Eigen::Index j = 0; j < p; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double diag = a.diagonal().norm();
    if (off_norm() <= 1e-12 * diag || diag == 0.0) break;
    for (Eigen::Index i = 0; i < p - 1; ++i) {
      for (Eigen::Index j = i + 1; j < p; ++j) {
        const double aij = a(i, j);
        if (aij == 0.0) continue;
        // Rotation angle from the symmetric Schur decomposition of the 2x2 block.
        const double theta = (a(j, j) - a(i, i)) / (2.0 * aij);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index r = 0; r < p; ++r) {
          const double ari = a(r, i);
          const double arj = a(r, j);
          a(r, i) = c * ari - s * arj;
          a(r, j) = s * ari + c * arj;
        }
        for (Eigen::Index r = 0; r < p; ++r) {
          const double air = a(i, r);
          const double ajr = a(j, r);
          a(i, r) = c * air - s * ajr;
          a(j, r) = s * air + c * ajr;
        }
        for (Eigen::Index r = 0; r < p; ++r) {
          const double vri = v(r, i);
          const double vrj = v(r, j);
          v(r, i) = c * vri - s * vrj;
          v(r, j) = s * vri + c * vrj;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });

  EigenDecomposition out;
  out.eigenvalues.resize(p);
  out.eigenvectors.resize(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto src = order[static_cast<std::size_t>(j)];
    out.eigenvalues[j] = a(src, src);
    Vector vec = v.col(src);
    const double peak = vec.cwiseAbs().maxCoeff();
    Eigen::Index lead = 0;
    while (std::abs(vec[lead]) < peak - 1e-12) ++lead;
    if (vec[lead] < 0.0) vec = -vec;
    out.eigenvectors.col(j) = vec;
  }
  return out;
}

Matrix correlation_matrix(const Matrix& standardized) {
  if (standardized.rows() < 1 || standardized.cols() < 1) {
    fail(ErrorCode::InvalidArgument, "empty standardized matrix");
  }
  for (Eigen::Index j = 0; j < standardized.cols(); ++j) {
    const double mean = standardized.col(j).mean();
    const double norm = standardized.col(j).norm();
    if (std::abs(mean) > 1e-8 || std::abs(norm - 1.0) > 1e-8) {
      fail(ErrorCode::NotStandardized, "column " + std::to_string(j) + " has mean " +
                                           std::to_string(mean) + " and norm " +
                                           std::to_string(norm));
    }
  }
  Matrix corr = standardized.transpose() * standardized;
  for (Eigen::Index i = 0; i < corr.rows(); ++i) {
    corr(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < corr.cols(); ++j) {
      const double r = std::clamp((corr(i, j) + corr(j, i)) / 2.0, -1.0, 1.0);
      corr(i, j) = r;
      corr(j, i) = r;
    }
  }
  return corr;
}

Matrix cholesky_lower(const Matrix& spd) {
  if (spd.rows() < 1) fail(ErrorCode::InvalidArgument, "empty matrix");
  if (!all_finite(spd)) fail(ErrorCode::InvalidArgument, "non-finite matrix entries");
  require_symmetric(spd, 1e-12, "cholesky_lower");
  const Eigen::Index p = spd.rows();
  const double scale = spd.diagonal().cwiseAbs().maxCoeff();
  Matrix l = Matrix::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double d = spd(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 1e-14 * scale)) {
      fail(ErrorCode::NotPositiveDefinite,
           "leading minor " + std::to_string(j + 1) + " is not positive");
    }
    l(j, j) = std::sqrt(d);
    for (Eigen::Index i = j + 1; i < p; ++i) {
      double s = spd(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

Matrix select_columns(const Matrix& source, std::span<const std::size_t> columns) {
  Matrix out(source.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (static_cast<Eigen::Index>(columns[j]) >= source.cols()) {
      fail(ErrorCode::IndexOutOfRange, "column " + std::to_string(columns[j]) + " out of range");
    }
    out.col(static_cast<Eigen::Index>(j)) = source.col(static_cast<Eigen::Index>(columns[j]));
  }
  return out;
}

bool is_ones_column(const Matrix& design, std::size_t column) {
  return (design.col(static_cast<Eigen::Index>(column)).array() == 1.0).all();
}

double column_mean(const Vector& column) { return column.mean(); }

double column_std(const Vector& column) {
  const double mean = column.mean();
  return std::sqrt((column.array() - mean).square().sum() / static_cast<double>(column.size()));
}

}  // namespace eemx
