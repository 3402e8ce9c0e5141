#pragma once

// I-screen, then one of the selection algorithms, then (when a response is
// present) scoring of the selected class.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eemx/model_space.hpp"
#include "eemx/scoring.hpp"
#include "eemx/vr_select.hpp"

namespace eemx {

enum class Algorithm { Vi, Vr, Brute };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view text);

struct RunOptions {
  Algorithm algorithm = Algorithm::Vi;
  Criterion criterion = Criterion::AdjustedCd;
  std::size_t budget = kDefaultEnumerationBudget;
  bool score = true;  // score when the dataset has a response
};

struct RunReport {
  std::string dataset_id;
  std::vector<std::string> names;
  std::size_t rows = 0;
  std::string response_name;
  ControlParams params;
  Algorithm algorithm = Algorithm::Vi;
  Criterion criterion = Criterion::AdjustedCd;
  std::optional<ModelIndexReport> index_table;  // full model; absent if degenerate
  IScreenResult screen;
  std::vector<PccClass> pcc_classes;  // VR only
  SelectionClass selection;
  std::optional<std::vector<RankedScore>> scores;
  std::vector<std::string> warnings;

  bool operator==(const RunReport&) const = default;
};

RunReport run_pipeline(const Dataset& ds, const ControlParams& params, const RunOptions& options = {});

}  // namespace eemx
