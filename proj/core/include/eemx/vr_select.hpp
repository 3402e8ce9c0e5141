#pragma once

// Variable-reducing search: standardize, take principal components of the
// correlation matrix, group variables that load heavily on one strong
// component (PCC classes), keep one variable per class in each candidate,
// then delete the most collinear variable until every R^2 <= d_R.
//
// Components are addressed by 0-based position in descending eigenvalue
// order. The methodology's own labels start at 2 for the first component;
// `component_label` converts.

#include <cstddef>
#include <optional>
#include <vector>

#include "eemx/model_space.hpp"

namespace eemx {

struct StandardizedDesign {
  Matrix z_matrix;                       // N x p, columns z_j = (x_j - mean) / (sqrt(N) s_j)
  Vector source_means;
  Vector source_stds;                    // 1/N divisor
  std::vector<std::size_t> column_map;   // dataset column of each z column
};

/// Intercept excluded. ConstantColumn when a selected regressor is constant.
StandardizedDesign standardize(const Dataset& ds, const ModelSubset& columns);
StandardizedDesign standardize(const Matrix& regressors, std::vector<std::size_t> column_map);

struct PcaResult {
  EigenDecomposition eig;
  Vector contributions;  // lambda_j / p
  Matrix identifiers;    // (k, m) -> d(m, k) = |sqrt(lambda_m) p_km|
};

PcaResult principal_components(const StandardizedDesign& std_design);

/// |sqrt(lambda_m) p_km| for component position m and variable position k.
double collinearity_identifier(const EigenDecomposition& eig, std::size_t m, std::size_t k);

inline std::size_t component_label(std::size_t component_position) { return component_position + 2; }

struct PccMember {
  std::size_t position = 0;  // column of the standardized design
  std::size_t column = 0;    // dataset column
  double identifier = 0.0;   // d(m, k)
  bool operator==(const PccMember&) const = default;
};

struct PccClass {
  std::size_t component = 0;  // 0-based
  double eigenvalue = 0.0;
  double contribution = 0.0;
  double threshold = 0.0;
  std::vector<PccMember> members;  // ascending position

  std::vector<std::size_t> columns() const;
  bool operator==(const PccClass&) const = default;
};

/// Members of one component's class at threshold a.
PccClass pcc_class(const StandardizedDesign& std_design, const PcaResult& pca, std::size_t m, double a);

/// Classes for every leading component whose contribution is >= b.
std::vector<PccClass> pcc_classes(const StandardizedDesign& std_design, const PcaResult& pca, double a,
                                  double b);
std::vector<PccClass> pcc_classes(const StandardizedDesign& std_design, double a, double b);

struct PairBound {
  std::size_t k = 0;  // positions in the standardized design
  std::size_t j = 0;
  double abs_corr = 0.0;
  double lower = 0.0;  // d_k d_j - (1 - a^2)
  double upper = 0.0;  // d_k d_j + (1 - a^2)
  double floor = 0.0;  // 2a^2 - 1
  bool holds = false;
};

/// Checks lower <= |z_k'z_j| <= upper and floor <= lower for every pair.
std::vector<PairBound> pair_correlation_bounds(const PccClass& cls, const StandardizedDesign& std_design);

/// One candidate per way of keeping exactly one variable from each class with
/// two or more members; every other variable of `full_columns` stays.
std::vector<ModelSubset> spawn_candidates(const ModelSubset& full_columns, const std::vector<PccClass>& classes);

struct CdReduction {
  ModelSubset model;
  std::vector<std::size_t> deleted;  // in deletion order
  std::vector<double> deleted_r2;
};

/// Repeatedly removes the variable with the largest R^2 (smallest column on
/// ties) while that R^2 exceeds d_R.
CdReduction cd_reduce(const ModelSubset& candidate, const Dataset& ds, double d_R);

/// R^2 of every regressor within the model, using the raw CD on the
/// intercept when the model has a single regressor. Singular cases give 1.
std::vector<double> r_check_squared_all(const ModelSubset& model, const Dataset& ds);

struct VrResult {
  IScreenResult screen;
  std::optional<StandardizedDesign> standardized;
  std::optional<PcaResult> pca;
  std::vector<PccClass> classes;
  std::vector<ModelSubset> candidates;
  std::vector<CdReduction> reductions;  // aligned with candidates
  std::vector<ModelSubset> models;      // deduplicated, lexicographic
};

VrResult vr_algorithm(const Dataset& ds, const ControlParams& params,
                      const std::optional<ModelSubset>& universe = std::nullopt);

}  // namespace eemx
