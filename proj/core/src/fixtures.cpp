#include "eemx/fixtures.hpp"

#include <cmath>

#include "eemx/errors.hpp"
#include "eemx/random.hpp"

namespace eemx {
namespace {

void check_sizes(std::size_t n, std::size_t k) {
  if (k < 2 || n <= k) {
    fail(ErrorCode::SizeOutOfRange, "fixtures need n > k >= 2 (got n=" + std::to_string(n) +
                                        ", k=" + std::to_string(k) + ")");
  }
}

Matrix normal_matrix(std::size_t n, std::size_t p, std::uint64_t seed) {
  NormalStream s(seed, 0);
  Matrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = s.next();
  }
  return g;
}

std::vector<std::string> default_names(std::size_t regressors) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < regressors; ++j) names.push_back("X" + std::to_string(j + 2));
  return names;
}

}  // namespace

Matrix helmert_design(std::size_t n, std::size_t k, const std::vector<double>& scales) {
  if (k < 1 || k > n) fail(ErrorCode::SizeOutOfRange, "Helmert design needs 1 <= k <= n");
  if (scales.size() != k) fail(ErrorCode::DimensionMismatch, "one scale per column required");
  Matrix x = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  x.col(0).setOnes();
  for (std::size_t j = 1; j < k; ++j) {
    if (!(scales[j] > 0.0)) fail(ErrorCode::InvalidArgument, "Helmert scales must be positive");
    const double norm = std::sqrt(static_cast<double>(j * (j + 1)));
    for (std::size_t r = 0; r < j; ++r) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = scales[j] / norm;
    x(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = -static_cast<double>(j) * scales[j] / norm;
  }
  return x;
}

Matrix helmert_design(std::size_t n, std::size_t k) { return helmert_design(n, k, std::vector<double>(k, 1.0)); }

Matrix exact_correlation_regressors(std::size_t n, const Matrix& corr, const std::vector<double>& means,
                                    const std::vector<double>& stds, std::uint64_t seed) {
  const auto p = static_cast<std::size_t>(corr.rows());
  if (means.size() != p || stds.size() != p) fail(ErrorCode::DimensionMismatch, "one mean and std per column");
  if (n <= p + 1) fail(ErrorCode::SizeOutOfRange, "need more rows than columns");
  const Matrix l = cholesky_lower(corr);

  // Orthonormal columns orthogonal to e by modified Gram-Schmidt.
  Matrix q = normal_matrix(n, p, seed);
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      q.col(j).array() -= q.col(j).sum() / static_cast<double>(n);
      for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    }
    q.col(j).normalize();
  }

  Matrix z = q * l.transpose();  // mean zero, Z'Z = corr
  const double root_n = std::sqrt(static_cast<double>(n));
  Matrix x(z.rows(), z.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const auto jj = static_cast<std::size_t>(j);
    if (!(stds[jj] > 0.0)) fail(ErrorCode::InvalidArgument, "stds must be positive");
    x.col(j) = (z.col(j) * (root_n * stds[jj])).array() + means[jj];
  }
  return x;
}

Matrix duplicate_pair_regressors(std::size_t n, std::size_t k, double perturbation, std::uint64_t seed) {
  check_sizes(n, k);
  if (k < 3) fail(ErrorCode::SizeOutOfRange, "a duplicated pair needs k >= 3");
  if (!(perturbation >= 0.0)) fail(ErrorCode::InvalidArgument, "perturbation must be >= 0");
  Matrix g = normal_matrix(n, k, seed);
  Matrix x(g.rows(), static_cast<Eigen::Index>(k - 1));
  for (Eigen::Index j = 0; j < x.cols(); ++j) x.col(j) = g.col(j).array() + 0.5 * static_cast<double>(j % 3);
  x.col(1) = x.col(0) + perturbation * g.col(static_cast<Eigen::Index>(k - 1));
  return x;
}

Matrix near_collinear_regressors(std::size_t n, std::size_t base_cols, double epsilon, std::uint64_t seed) {
  check_sizes(n, base_cols + 2);
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  Matrix g = normal_matrix(n, base_cols + 1, seed);
  Matrix x(g.rows(), static_cast<Eigen::Index>(base_cols + 1));
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(base_cols); ++j) {
    x.col(j) = g.col(j).array() + 1.0;
  }
  x.col(static_cast<Eigen::Index>(base_cols)) = x.col(0) + epsilon * g.col(static_cast<Eigen::Index>(base_cols));
  return x;
}

Matrix published_gasoline_correlation() {
  Matrix c(4, 4);
  c << 1.000, 0.990, 0.640, 0.824,
       0.990, 1.000, 0.653, 0.801,
       0.640, 0.653, 1.000, 0.395,
       0.824, 0.801, 0.395, 1.000;
  return c;
}

Dataset gasoline_surrogate() {
  const Matrix x = exact_correlation_regressors(30, published_gasoline_correlation(), {10.0, 5.0, 2.0, 0.5},
                                                {10.0, 8.0, 4.0, 1.0});
  return make_dataset(x, {"X2", "X4", "X7", "X12"});
}

std::string_view to_string(FixtureKind k) {
  switch (k) {
    case FixtureKind::Helmert: return "helmert";
    case FixtureKind::DuplicatePair: return "duplicate_pair";
    case FixtureKind::NearCollinear: return "near_collinear";
    case FixtureKind::IdentityCorr: return "identity_corr";
    case FixtureKind::GasolineSurrogate: return "gasoline_surrogate";
  }
  return "?";
}

FixtureKind parse_fixture_kind(std::string_view text) {
  for (auto k : {FixtureKind::Helmert, FixtureKind::DuplicatePair, FixtureKind::NearCollinear,
                 FixtureKind::IdentityCorr, FixtureKind::GasolineSurrogate}) {
    if (text == to_string(k)) return k;
  }
  fail(ErrorCode::InvalidArgument, "unknown fixture kind '" + std::string(text) + "'");
}

Dataset make_fixture(const FixtureSpec& spec) {
  switch (spec.kind) {
    case FixtureKind::Helmert: {
      check_sizes(spec.n, spec.k);
      const Matrix x = helmert_design(spec.n, spec.k);
      return make_dataset(x.rightCols(x.cols() - 1), default_names(spec.k - 1));
    }
    case FixtureKind::DuplicatePair:
      return make_dataset(duplicate_pair_regressors(spec.n, spec.k, spec.parameter, spec.seed),
                          default_names(spec.k - 1));
    case FixtureKind::NearCollinear:
      if (spec.k < 3) fail(ErrorCode::SizeOutOfRange, "near-collinear fixture needs k >= 3");
      return make_dataset(near_collinear_regressors(spec.n, spec.k - 2, spec.parameter, spec.seed),
                          default_names(spec.k - 1));
    case FixtureKind::IdentityCorr: {
      check_sizes(spec.n, spec.k);
      const auto p = spec.k - 1;
      const Matrix x = exact_correlation_regressors(spec.n, Matrix::Identity(static_cast<Eigen::Index>(p),
                                                                              static_cast<Eigen::Index>(p)),
                                                    std::vector<double>(p, 0.0), std::vector<double>(p, 1.0),
                                                    spec.seed);
      return make_dataset(x, default_names(p));
    }
    case FixtureKind::GasolineSurrogate:
      return gasoline_surrogate();
  }
  fail(ErrorCode::InvalidArgument, "unknown fixture kind");
}

}  // namespace eemx
