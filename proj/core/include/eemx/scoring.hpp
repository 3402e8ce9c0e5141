#pragma once

// Whole-model criteria computed against the observed response.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eemx/model_space.hpp"

namespace eemx {

enum class Criterion { Aic, Bic, AdjustedCd, Rse };

std::string_view to_string(Criterion c);
/// Accepts aic, bic, adjr2 / adjusted_cd, rse.
Criterion parse_criterion(std::string_view text);

struct CoefficientScore {
  std::size_t column = 0;
  std::string name;
  double coefficient = 0.0;
  double se = 0.0;
  double pse = 0.0;  // equals se for the intercept
  bool operator==(const CoefficientScore&) const = default;
};

// rss at or below (tol * |y|)^2 is an exact fit: rss, rse reported as 0 and
// aic, bic as -inf.
inline constexpr double kExactFitTolerance = 1e-10;

struct ModelScore {
  ModelSubset model;
  double rss = 0.0;
  double rse = 0.0;
  double cd = 0.0;
  double adjusted_cd = 0.0;
  double aic = 0.0;  // N ln(rss/N) + 2J; -inf for an exact fit
  double bic = 0.0;  // N ln(rss/N) + J ln N
  double mean_h = 1.0;
  double mean_h_scaled = 0.0;  // rse * mean H / sqrt(N)
  bool exact_fit = false;
  std::vector<CoefficientScore> per_coef;
  bool operator==(const ModelScore&) const = default;
};

ModelScore score_model(const ModelSubset& model, const Dataset& ds);

/// Value used for ranking; smaller is better after orientation.
double criterion_value(const ModelScore& s, Criterion c);

struct RankedScore {
  ModelScore score;
  std::size_t rank = 0;  // 1 = best
  bool best = false;
  bool operator==(const RankedScore&) const = default;
};

/// Scores every model and sorts best first. Ties keep lexicographic model order.
std::vector<RankedScore> select_optimal(const std::vector<ModelSubset>& models, const Dataset& ds, Criterion c);
std::vector<RankedScore> select_optimal(const SelectionClass& cls, const Dataset& ds, Criterion c);

}  // namespace eemx
