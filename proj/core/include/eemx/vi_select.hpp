#pragma once

// Variable-increasing search: start from the intercept, admit one variable at
// a time while its CD on the already-selected set stays at or below d_R, and
// branch on every admissible variable.

#include <cstddef>
#include <optional>
#include <vector>

#include "eemx/model_space.hpp"

namespace eemx {

/// q^2 of the candidate when only the intercept is selected, otherwise the CD
/// of regressing the candidate on the selected columns.
double incremental_cd(std::size_t candidate, const ModelSubset& selected, const Dataset& ds);

struct ViResult {
  std::vector<ModelSubset> models;    // set-maximal results, lexicographic
  std::vector<ModelSubset> repaired;  // those that needed the repair pass
  std::size_t terminals_repaired = 0;  // terminal sets that left the class, kept or not
  std::size_t states_visited = 0;
};

/// Runs the search over the regressors of `universe` (default: all columns).
/// Candidates must pass q^2 <= c_q (and ||x|| >= e_norm when set); the first
/// admission uses q^2 <= min(c_q, d_R). Terminal sets that are not full D^cd
/// members lose their most recently admitted variable until they are.
ViResult vi_algorithm(const Dataset& ds, double d_R, double c_q,
                      const std::optional<ModelSubset>& universe = std::nullopt,
                      std::optional<double> e_norm = std::nullopt,
                      std::size_t budget = kDefaultEnumerationBudget);

}  // namespace eemx
