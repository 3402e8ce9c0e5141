#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "eemx/errors.hpp"
#include "eemx/fixtures.hpp"
#include "eemx/numerics.hpp"
#include "generators.hpp"

using namespace eemx;

namespace {

Matrix with_intercept(std::initializer_list<std::initializer_list<double>> cols) {
  const auto n = static_cast<Eigen::Index>(cols.begin()->size());
  Matrix x(n, static_cast<Eigen::Index>(cols.size() + 1));
  x.col(0).setOnes();
  Eigen::Index c = 1;
  for (const auto& col : cols) {
    Eigen::Index r = 0;
    for (double v : col) x(r++, c) = v;
    ++c;
  }
  return x;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

double max_rel(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace

TEST(OlsFit, ExactFitRecoversLine) {
  const Matrix x = with_intercept({{1, 2, 3, 4}});
  const auto fit = ols_fit(x, vec({1, 2, 3, 4}));
  EXPECT_NEAR(fit.coefficients(0), 0.0, 1e-12);
  EXPECT_NEAR(fit.coefficients(1), 1.0, 1e-12);
  EXPECT_NEAR(fit.rss, 0.0, 1e-20);
  EXPECT_DOUBLE_EQ(fit.cd, 1.0);
}

TEST(OlsFit, InterceptOnlyIsTheMean) {
  const Matrix x = Matrix::Ones(3, 1);
  const auto fit = ols_fit(x, vec({1, 2, 3}));
  EXPECT_NEAR(fit.coefficients(0), 2.0, 1e-14);
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(fit.fitted(i), 2.0, 1e-14);
  EXPECT_NEAR(fit.cd, 0.0, 1e-14);
}

TEST(OlsFit, HandSolvedNormalEquations) {
  // X'X = [[4,10],[10,30]], X'y = [9,26] -> slope 0.9, intercept 0; rss 0.7, sst 4.75
  const auto fit = ols_fit(with_intercept({{1, 2, 3, 4}}), vec({1, 2, 2, 4}));
  EXPECT_NEAR(fit.coefficients(0), 0.0, 1e-12);
  EXPECT_NEAR(fit.coefficients(1), 0.9, 1e-12);
  EXPECT_NEAR(fit.rss, 0.7, 1e-12);
  EXPECT_NEAR(fit.rse, std::sqrt(0.7 / 2.0), 1e-12);
  EXPECT_NEAR(fit.cd, 1.0 - 0.7 / 4.75, 1e-12);
  // (X'X)^{-1} diagonal: 30/20, 4/20
  EXPECT_NEAR(fit.variance_factors(0), 1.5, 1e-12);
  EXPECT_NEAR(fit.variance_factors(1), 0.2, 1e-12);
}

TEST(OlsFit, Errors) {
  const Matrix x = with_intercept({{1, 2, 3, 4}, {2, 4, 6, 8}});
  try {
    ols_fit(x, vec({1, 2, 3, 5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
  EXPECT_THROW(ols_fit(with_intercept({{1, 2, 3, 4}}), vec({1, 2, 3})), Error);
  EXPECT_THROW(ols_fit(Matrix::Ones(2, 2), vec({1, 2})), Error);
}

TEST(OlsFit, MatchesQrOracleAndInvariants) {
  testgen::Gen gen(101);
  for (int t = 0; t < 50; ++t) {
    const std::size_t p = gen.index(1, 6);
    const std::size_t n = p + 2 + gen.index(0, 30);
    const Matrix x = gen.design(n, p);
    Vector y(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = gen.normal() * 3.0 + 1.0;
    const auto fit = ols_fit(x, y);
    const Vector oracle = x.colPivHouseholderQr().solve(y);
    EXPECT_LT((fit.coefficients - oracle).norm() / std::max(1.0, oracle.norm()), 1e-8);
    EXPECT_LT((fit.fitted + fit.residuals - y).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, y.norm()));
    EXPECT_NEAR(fit.rss, fit.residuals.squaredNorm(), 1e-10 * std::max(1.0, fit.rss));
    const Vector xr = x.transpose() * fit.residuals;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      EXPECT_LT(std::abs(xr(j)), 1e-7 * x.col(j).norm() * std::max(1.0, fit.residuals.norm()));
    }
    EXPECT_GE(fit.cd, 0.0);
    EXPECT_LE(fit.cd, 1.0);
    // projecting fitted values again changes nothing
    const auto again = ols_fit(x, fit.fitted);
    EXPECT_LT((again.fitted - fit.fitted).cwiseAbs().maxCoeff(), 1e-8 * std::max(1.0, fit.fitted.norm()));
  }
}

TEST(CdOfRegression, HandExample) {
  const Matrix x = with_intercept({{1, 2, 3, 4}, {1, 2, 3, 5}});
  EXPECT_NEAR(cd_of_regression(2, x), 42.25 / 43.75, 1e-12);
}

TEST(CdOfRegression, OrthogonalMeanZeroGivesZero) {
  const Matrix x = helmert_design(6, 4);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(cd_of_regression(k, x), 0.0, 1e-12);
}

TEST(CdOfRegression, Errors) {
  const Matrix x = with_intercept({{2, 2, 2, 2}, {1, 2, 3, 5}});
  try {
    cd_of_regression(1, x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConstantTarget);
  }
  try {
    cd_of_regression(3, with_intercept({{1, 2, 3, 4}, {2, 4, 6, 8}, {1, 0, 0, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
  EXPECT_THROW(cd_of_regression(1, Matrix::Random(4, 2)), Error);  // no intercept
  EXPECT_THROW(cd_of_regression(5, with_intercept({{1, 2, 3, 4}})), Error);
}

TEST(CdOfRegression, AgreesWithOlsRoute) {
  testgen::Gen gen(202);
  for (int t = 0; t < 100; ++t) {
    const std::size_t p = gen.index(2, 7);
    const std::size_t n = p + 3 + gen.index(0, 25);
    const Matrix x = gen.design(n, p);
    const std::size_t k = gen.index(1, p);
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j <= p; ++j)
      if (j != k) rest.push_back(j);
    const Vector target = x.col(static_cast<Eigen::Index>(k));
    const auto fit = ols_fit(select_columns(x, rest), target);
    const double s2 = column_std(target) * column_std(target);
    const double two_route = 1.0 - fit.rss / (static_cast<double>(n) * s2);
    EXPECT_NEAR(cd_of_regression(k, x), two_route, 1e-10);
  }
}

TEST(SymEigen, Identity) {
  const auto e = sym_eigen(Matrix::Identity(4, 4));
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(e.eigenvalues(i), 1.0, 1e-14);
  EXPECT_LT(max_rel(e.eigenvectors, Matrix::Identity(4, 4)), 1e-14);
}

TEST(SymEigen, TwoByTwo) {
  Matrix a(2, 2);
  a << 1, 0.5, 0.5, 1;
  const auto e = sym_eigen(a);
  EXPECT_NEAR(e.eigenvalues(0), 1.5, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 0.5, 1e-14);
  // tie in |entries|: lowest index carries the positive sign
  EXPECT_GT(e.eigenvectors(0, 0), 0.0);
  EXPECT_GT(e.eigenvectors(0, 1), 0.0);
}

TEST(SymEigen, PublishedCorrelation) {
  const auto e = sym_eigen(published_gasoline_correlation());
  const double expect[] = {3.188, 0.625, 0.178, 0.010};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(e.eigenvalues(i), expect[i], 1e-3);
}

TEST(SymEigen, RejectsAsymmetric) {
  Matrix a(2, 2);
  a << 1, 0.5, 0.4, 1;
  try {
    sym_eigen(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}

TEST(SymEigen, PropertiesAgainstEigenOracle) {
  testgen::Gen gen(303);
  for (int t = 0; t < 60; ++t) {
    const std::size_t p = gen.index(1, 12);
    Matrix a = gen.spd(p);
    if (gen.coin()) a -= 2.0 * Matrix::Identity(a.rows(), a.cols());  // indefinite too
    const auto e = sym_eigen(a);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const Matrix recon = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.transpose();
    EXPECT_LT((recon - a).cwiseAbs().maxCoeff() / scale, 1e-10);
    EXPECT_LT((e.eigenvectors.transpose() * e.eigenvectors - Matrix::Identity(a.rows(), a.cols()))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
    EXPECT_NEAR(e.eigenvalues.sum(), a.trace(), 1e-10 * scale * static_cast<double>(p));
    for (Eigen::Index i = 1; i < e.eigenvalues.size(); ++i) EXPECT_GE(e.eigenvalues(i - 1), e.eigenvalues(i));
    Eigen::SelfAdjointEigenSolver<Matrix> oracle(a);
    const Vector ov = oracle.eigenvalues().reverse();
    EXPECT_LT((ov - e.eigenvalues).cwiseAbs().maxCoeff() / scale, 1e-10);
    for (Eigen::Index j = 0; j < e.eigenvectors.cols(); ++j) {
      Eigen::Index arg = 0;
      e.eigenvectors.col(j).cwiseAbs().maxCoeff(&arg);
      EXPECT_GT(e.eigenvectors(arg, j), 0.0);
    }
  }
}

TEST(SymEigen, Deterministic) {
  testgen::Gen gen(304);
  const Matrix a = gen.spd(6);
  const auto e1 = sym_eigen(a);
  const auto e2 = sym_eigen(a);
  EXPECT_EQ(e1.eigenvalues, e2.eigenvalues);
  EXPECT_EQ(e1.eigenvectors, e2.eigenvectors);
}

TEST(CorrelationMatrix, DuplicateAndOrthogonal) {
  Matrix z(4, 2);
  const double h = 0.5;
  z << h, h, -h, -h, h, h, -h, -h;
  EXPECT_NEAR(correlation_matrix(z)(0, 1), 1.0, 1e-15);
  const Matrix hel = helmert_design(5, 4).rightCols(3);
  const Matrix c = correlation_matrix(hel);
  EXPECT_LT((c - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(CorrelationMatrix, RejectsUnstandardized) {
  Matrix z(3, 1);
  z << 1, 2, 3;
  try {
    correlation_matrix(z);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotStandardized);
  }
}

TEST(Cholesky, HandAndIdentity) {
  Matrix a(2, 2);
  a << 4, 2, 2, 5;
  Matrix expect(2, 2);
  expect << 2, 0, 1, 2;
  EXPECT_LT(max_rel(cholesky_lower(a), expect), 1e-15);
  EXPECT_LT(max_rel(cholesky_lower(Matrix::Identity(3, 3)), Matrix::Identity(3, 3)), 1e-15);
  const Matrix c = published_gasoline_correlation();
  const Matrix l = cholesky_lower(c);
  EXPECT_LT(max_rel(l * l.transpose(), c), 1e-10);
}

TEST(Cholesky, RandomSpdReconstructs) {
  testgen::Gen gen(404);
  for (int t = 0; t < 50; ++t) {
    const Matrix a = gen.spd(gen.index(1, 10));
    const Matrix l = cholesky_lower(a);
    EXPECT_LT(max_rel(l * l.transpose(), a), 1e-10);
    EXPECT_EQ(l.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Cholesky, RejectsIndefinite) {
  Matrix a(2, 2);
  a << 1, 2, 2, 1;
  try {
    cholesky_lower(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
  }
}
