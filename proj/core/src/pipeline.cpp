#include "eemx/pipeline.hpp"

#include <cmath>

#include "eemx/errors.hpp"
#include "eemx/vi_select.hpp"

namespace eemx {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Vi: return "vi";
    case Algorithm::Vr: return "vr";
    case Algorithm::Brute: return "brute";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "vi") return Algorithm::Vi;
  if (text == "vr") return Algorithm::Vr;
  if (text == "brute") return Algorithm::Brute;
  fail(ErrorCode::InvalidArgument, "unknown algorithm '" + std::string(text) + "'");
}

RunReport run_pipeline(const Dataset& ds, const ControlParams& params, const RunOptions& options) {
  params.validate();
  RunReport report;
  report.dataset_id = ds.id;
  report.names = ds.names;
  report.rows = ds.rows();
  report.response_name = ds.response_name;
  report.params = params;
  report.algorithm = options.algorithm;
  report.criterion = options.criterion;

  try {
    report.index_table = model_report(full_model(ds), ds);
  } catch (const Error& e) {
    if (e.category() != ErrorCategory::Numerical) throw;
    report.warnings.push_back(std::string("full-model index table unavailable: ") + e.what());
  }

  report.screen = i_screen(ds, params.c_q);
  for (const auto& d : report.screen.dropped) {
    if (!std::isfinite(d.i_index)) {
      report.warnings.push_back(ds.names[d.column] + ": I-index infinite; variable is immobile");
    }
  }

  try {
    switch (options.algorithm) {
      case Algorithm::Vi: {
        const ViResult vi = vi_algorithm(ds, params.d_R, params.c_q, report.screen.survivors, params.e_norm,
                                         options.budget);
        report.selection = make_selection_class(vi.models, ds, vi.repaired);
        for (const auto& m : vi.repaired) {
          report.warnings.push_back(model_label(m, ds) + " repaired after over-admission");
        }
        break;
      }
      case Algorithm::Vr: {
        const VrResult vr = vr_algorithm(ds, params, report.screen.survivors);
        report.pcc_classes = vr.classes;
        report.selection = make_selection_class(vr.models, ds);
        break;
      }
      case Algorithm::Brute:
        report.selection = brute_force_dcd(ds, params, report.screen.survivors, std::nullopt, options.budget);
        break;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    report.warnings.push_back(e.what());
  }

  if (report.selection.entries.empty()) {
    report.warnings.push_back("EmptySelectionClass: no model satisfies the control levels");
  } else if (options.score && ds.response) {
    report.scores = select_optimal(report.selection, ds, options.criterion);
  }
  return report;
}

}  // namespace eemx
