#pragma once

// Designs with analytically known structure for tests, benchmarks and the
// `fixtures` subcommand. All generators are deterministic.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eemx/dataset.hpp"

namespace eemx {

/// Intercept plus Helmert columns: column j (j >= 1) is scales[j] times the
/// unit vector (1, ..., 1, -j, 0, ..., 0)' / sqrt(j (j + 1)). scales[0] is
/// ignored because the intercept is always all ones.
Matrix helmert_design(std::size_t n, std::size_t k, const std::vector<double>& scales);
Matrix helmert_design(std::size_t n, std::size_t k);

/// Mean-zero columns whose sample correlation matrix equals `corr` exactly;
/// column j then gets mean means[j] and (1/N) standard deviation stds[j].
Matrix exact_correlation_regressors(std::size_t n, const Matrix& corr, const std::vector<double>& means,
                                    const std::vector<double>& stds, std::uint64_t seed = 7);

/// k - 1 regressors: column 2 is column 1 plus `perturbation` times noise,
/// the rest independent draws with non-zero means.
Matrix duplicate_pair_regressors(std::size_t n, std::size_t k, double perturbation, std::uint64_t seed = 11);

/// `base_cols` independent regressors followed by one extra column equal to
/// the first plus epsilon times noise.
Matrix near_collinear_regressors(std::size_t n, std::size_t base_cols, double epsilon, std::uint64_t seed = 13);

/// Correlation matrix of the four I-screened gasoline variables as published.
Matrix published_gasoline_correlation();

/// N = 30 design named X2, X4, X7, X12 whose correlations equal the published
/// matrix exactly. Stand-in when the real gasoline file is unavailable.
Dataset gasoline_surrogate();

enum class FixtureKind { Helmert, DuplicatePair, NearCollinear, IdentityCorr, GasolineSurrogate };

std::string_view to_string(FixtureKind k);
FixtureKind parse_fixture_kind(std::string_view text);

struct FixtureSpec {
  FixtureKind kind = FixtureKind::Helmert;
  std::size_t n = 10;
  std::size_t k = 4;  // design columns including the intercept
  double parameter = 0.05;
  std::uint64_t seed = 0;
};

/// Dataset with regressor names X2..Xk.
Dataset make_fixture(const FixtureSpec& spec);

}  // namespace eemx
