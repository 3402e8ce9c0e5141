#include "eemx/vi_select.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "eemx/errors.hpp"

namespace eemx {

double incremental_cd(std::size_t candidate, const ModelSubset& selected, const Dataset& ds) {
  check_model(selected, ds);
  if (candidate >= ds.cols()) fail(ErrorCode::IndexOutOfRange, "candidate column out of range");
  if (selected.contains(candidate)) fail(ErrorCode::InvalidArgument, "candidate already selected");
  if (selected.column_size() == 1) {
    return q_squared(ds.design.col(static_cast<Eigen::Index>(candidate)));
  }
  std::vector<std::size_t> cols = selected.columns();
  cols.push_back(candidate);
  const Matrix x = select_columns(ds.design, cols);
  return cd_of_regression(cols.size() - 1, x);
}

namespace {

class ViSearch {
 public:
  ViSearch(const Dataset& ds, double d_R, double c_q, std::optional<double> e_norm, std::size_t budget)
      : ds_(ds), d_R_(d_R), c_q_(c_q), e_norm_(e_norm), budget_(budget) {}

  void run(const ModelSubset& universe) {
    for (auto c : universe.regressors()) {
      const Vector x = ds_.design.col(static_cast<Eigen::Index>(c));
      if (x.squaredNorm() == 0.0) continue;
      if (q_squared(x) > c_q_) continue;
      if (e_norm_ && x.norm() < *e_norm_) continue;
      pool_.push_back(c);
    }
    const ModelSubset root(std::vector<std::size_t>{kIntercept}, ds_.id);
    std::vector<std::size_t> order;
    expand(root, order);
  }

  std::map<std::vector<std::size_t>, std::vector<std::size_t>>& terminals() { return terminals_; }
  std::size_t visited() const { return visited_.size(); }

 private:
  bool admissible(std::size_t candidate, const ModelSubset& selected) const {
    double cd = 1.0;
    try {
      cd = incremental_cd(candidate, selected, ds_);
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::Numerical) throw;
      return false;
    }
    const double limit = selected.column_size() == 1 ? std::min(c_q_, d_R_) : d_R_;
    return cd <= limit;
  }

  void expand(const ModelSubset& selected, std::vector<std::size_t>& order) {
    if (!visited_.insert(selected.columns()).second) return;
    if (visited_.size() > budget_) {
      fail(ErrorCode::BudgetExceeded, "variable-increasing search exceeded " + std::to_string(budget_) + " states");
    }
    bool extended = false;
    for (auto c : pool_) {
      if (selected.contains(c) || !admissible(c, selected)) continue;
      extended = true;
      order.push_back(c);
      expand(selected.with(c), order);
      order.pop_back();
    }
    if (!extended && selected.column_size() > 1) terminals_.emplace(selected.columns(), order);
  }

  const Dataset& ds_;
  double d_R_;
  double c_q_;
  std::optional<double> e_norm_;
  std::size_t budget_;
  std::vector<std::size_t> pool_;
  std::set<std::vector<std::size_t>> visited_;
  // terminal set -> admission order of the first path that reached it
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> terminals_;
};

}  // namespace

ViResult vi_algorithm(const Dataset& ds, double d_R, double c_q, const std::optional<ModelSubset>& universe,
                      std::optional<double> e_norm, std::size_t budget) {
  ControlParams params;
  params.c_q = c_q;
  params.d_R = d_R;
  params.e_norm = e_norm;
  params.validate();

  const ModelSubset base = universe ? *universe : full_model(ds);
  check_model(base, ds);
  ViSearch search(ds, d_R, c_q, e_norm, budget);
  search.run(base);

  std::set<ModelSubset> results;
  std::set<ModelSubset> repaired;
  std::size_t terminals_repaired = 0;
  for (auto& [cols, order] : search.terminals()) {
    ModelSubset m(cols, ds.id);
    bool changed = false;
    while (m.column_size() > 1 && !in_class(m, ds, params).member) {
      m = m.without(order.back());
      order.pop_back();
      changed = true;
    }
    if (changed) ++terminals_repaired;
    if (m.column_size() < 2) continue;
    results.insert(m);
    if (changed) repaired.insert(m);
  }

  ViResult out;
  out.states_visited = search.visited();
  out.terminals_repaired = terminals_repaired;
  for (const auto& m : results) {
    const bool dominated = std::any_of(results.begin(), results.end(), [&](const ModelSubset& other) {
      return other.column_size() > m.column_size() && m.is_subset_of(other);
    });
    if (dominated) continue;
    out.models.push_back(m);
    if (repaired.count(m)) out.repaired.push_back(m);
  }
  return out;
}

}  // namespace eemx
