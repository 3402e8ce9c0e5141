#include "eemx/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "eemx/errors.hpp"

namespace eemx {

ModelSubset::ModelSubset(std::vector<std::size_t> columns, std::string parent_id)
    : columns_(std::move(columns)), parent_id_(std::move(parent_id)) {
  std::sort(columns_.begin(), columns_.end());
  columns_.erase(std::unique(columns_.begin(), columns_.end()), columns_.end());
  if (columns_.empty() || columns_.front() != kIntercept) {
    fail(ErrorCode::InvalidArgument, "a model must contain the intercept column");
  }
}

bool ModelSubset::contains(std::size_t column) const {
  return std::binary_search(columns_.begin(), columns_.end(), column);
}

bool ModelSubset::is_subset_of(const ModelSubset& other) const {
  return std::includes(other.columns_.begin(), other.columns_.end(), columns_.begin(), columns_.end());
}

ModelSubset ModelSubset::with(std::size_t column) const {
  auto cols = columns_;
  cols.push_back(column);
  return ModelSubset(std::move(cols), parent_id_);
}

ModelSubset ModelSubset::without(std::size_t column) const {
  if (column == kIntercept) fail(ErrorCode::InvalidArgument, "the intercept cannot be removed");
  auto cols = columns_;
  cols.erase(std::remove(cols.begin(), cols.end(), column), cols.end());
  return ModelSubset(std::move(cols), parent_id_);
}

ModelSubset intersect(const ModelSubset& a, const ModelSubset& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.columns_.begin(), a.columns_.end(), b.columns_.begin(), b.columns_.end(),
                        std::back_inserter(out));
  return ModelSubset(std::move(out), a.parent_id_);
}

ModelSubset full_model(const Dataset& ds) {
  std::vector<std::size_t> cols(ds.cols());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  return ModelSubset(std::move(cols), ds.id);
}

void check_model(const ModelSubset& model, const Dataset& ds) {
  if (model.columns().back() >= ds.cols()) {
    fail(ErrorCode::IndexOutOfRange, "model column " + std::to_string(model.columns().back()) +
                                         " outside a dataset of " + std::to_string(ds.cols()) + " columns");
  }
}

Matrix model_design(const ModelSubset& model, const Dataset& ds) {
  check_model(model, ds);
  return select_columns(ds.design, model.columns());
}

std::string model_label(const ModelSubset& model, const Dataset& ds) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < model.columns().size(); ++i) {
    const auto c = model.columns()[i];
    os << (i ? ", " : "") << (c < ds.names.size() ? ds.names[c] : std::to_string(c));
  }
  os << '}';
  return os.str();
}

void ControlParams::validate() const {
  auto bad = [](const std::string& what) { fail(ErrorCode::InvalidArgument, what); };
  if (!(c_q >= 0.0 && c_q < 1.0)) bad("c_q must lie in [0,1)");
  if (!(d_R >= 0.0 && d_R < 1.0)) bad("d_R must lie in [0,1)");
  if (!(a >= 0.9 && a <= 1.0)) bad("a must lie in [0.9,1]");
  if (!(b > 0.0 && b < 1.0)) bad("b must lie in (0,1)");
  if (e_norm && !(*e_norm >= 0.0)) bad("e_norm must be >= 0");
}

ControlParams ControlParams::from_levels(double c, double d, double a, double b,
                                         std::optional<double> e_norm) {
  ControlParams p;
  p.c_q = squared_from_level(c);
  p.d_R = squared_from_level(d);
  p.a = a;
  p.b = b;
  p.e_norm = e_norm;
  p.validate();
  return p;
}

void for_each_model(std::size_t total_columns, std::size_t column_size,
                    const std::function<bool(const ModelSubset&)>& visit) {
  if (column_size < 2 || column_size > total_columns) {
    fail(ErrorCode::SizeOutOfRange, "column size " + std::to_string(column_size) +
                                        " outside [2, " + std::to_string(total_columns) + "]");
  }
  // Choose column_size - 1 regressors out of 1..total_columns-1.
  const std::size_t r = column_size - 1;
  std::vector<std::size_t> pick(r);
  for (std::size_t i = 0; i < r; ++i) pick[i] = i + 1;
  while (true) {
    std::vector<std::size_t> cols{kIntercept};
    cols.insert(cols.end(), pick.begin(), pick.end());
    if (!visit(ModelSubset(std::move(cols)))) return;
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == total_columns - r + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::vector<ModelSubset> enumerate_models(std::size_t total_columns, std::size_t column_size) {
  std::vector<ModelSubset> out;
  for_each_model(total_columns, column_size, [&](const ModelSubset& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::size_t enumeration_count(std::size_t total_columns, std::size_t max_column_size) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  if (total_columns < 2) return 0;
  const std::size_t n = total_columns - 1;
  const std::size_t top = std::min(max_column_size, total_columns);
  std::size_t total = 0;
  std::size_t binom = 1;  // C(n, r) for r = 0
  for (std::size_t r = 1; r + 1 <= top; ++r) {
    // binom = C(n, r) computed incrementally; saturate rather than overflow
    const std::size_t num = n - r + 1;
    if (binom > kMax / num) return kMax;
    binom = binom * num / r;
    if (total > kMax - binom) return kMax;
    total += binom;
  }
  return total;
}

ModelIndexReport model_report(const ModelSubset& model, const Dataset& ds) {
  const Matrix x = model_design(model, ds);
  std::vector<std::string> names;
  names.reserve(model.column_size());
  for (auto c : model.columns()) names.push_back(c < ds.names.size() ? ds.names[c] : std::to_string(c));
  ModelIndexReport report = model_index_report(x, names);
  for (auto& v : report.per_variable) v.variable_index = model.columns()[v.variable_index];
  return report;
}

MembershipVerdict in_class(const ModelSubset& model, const Dataset& ds, const ControlParams& params) {
  check_model(model, ds);
  MembershipVerdict verdict;
  try {
    verdict.report = model_report(model, ds);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::RankDeficient:
      case ErrorCode::PerfectCollinearity:
      case ErrorCode::ConstantColumn:
      case ErrorCode::ConstantTarget:
      case ErrorCode::ZeroVector:
        verdict.violations.push_back({kIntercept, ViolationKind::Degenerate, 0.0, 0.0, e.what()});
        return verdict;
      default:
        throw;
    }
  }
  for (const auto& v : verdict.report->per_variable) {
    if (v.q_squared > params.c_q) {
      verdict.violations.push_back({v.variable_index, ViolationKind::Inefficiency, v.q_squared, params.c_q, {}});
    }
    if (v.r_check_squared > params.d_R) {
      verdict.violations.push_back(
          {v.variable_index, ViolationKind::Collinearity, v.r_check_squared, params.d_R, {}});
    }
    if (params.e_norm && std::sqrt(v.norm_squared) < *params.e_norm) {
      verdict.violations.push_back(
          {v.variable_index, ViolationKind::Norm, std::sqrt(v.norm_squared), *params.e_norm, {}});
    }
  }
  verdict.member = verdict.violations.empty();
  return verdict;
}

Icri icri(const ModelSubset& model, const Dataset& ds) { return model_report(model, ds).icri; }

Accommodation better_accommodates(const Icri& m1, const Icri& m2, bool same_column_size) {
  if (!same_column_size) {
    fail(ErrorCode::DifferentColumnSizes, "ICRI comparison needs models of one column size");
  }
  if (m1.c_m == m2.c_m && m1.d_m == m2.d_m) return Accommodation::Equal;
  if (m1.c_m <= m2.c_m && m1.d_m <= m2.d_m) return Accommodation::Better;
  if (m2.c_m <= m1.c_m && m2.d_m <= m1.d_m) return Accommodation::Worse;
  return Accommodation::Incomparable;
}

std::vector<std::size_t> pareto_front(std::span<const Icri> icris) {
  // Sort by (c, d); an entry is dominated iff some earlier entry with a
  // different pair has d no larger.
  std::vector<std::size_t> order(icris.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (icris[l].c_m != icris[r].c_m) return icris[l].c_m < icris[r].c_m;
    return icris[l].d_m < icris[r].d_m;
  });
  std::vector<std::size_t> front;
  double best_d = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    // group identical pairs; they stand or fall together
    std::size_t j = i;
    const Icri& head = icris[order[i]];
    while (j < order.size() && icris[order[j]] == head) ++j;
    if (head.d_m < best_d) {
      for (std::size_t t = i; t < j; ++t) front.push_back(order[t]);
      best_d = head.d_m;
    }
    i = j;
  }
  std::sort(front.begin(), front.end());
  return front;
}

std::vector<ModelSubset> admissible_set(std::span<const ModelSubset> models, const Dataset& ds) {
  if (models.empty()) return {};
  std::vector<Icri> icris;
  icris.reserve(models.size());
  for (const auto& m : models) {
    if (m.column_size() != models.front().column_size()) {
      fail(ErrorCode::MixedColumnSizes, "admissibility is defined within one column size");
    }
    icris.push_back(icri(m, ds));
  }
  std::vector<ModelSubset> out;
  for (auto i : pareto_front(icris)) out.push_back(models[i]);
  return out;
}

std::vector<ModelSubset> SelectionClass::models() const {
  std::vector<ModelSubset> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.model);
  return out;
}

std::vector<ModelSubset> SelectionClass::maximal_models() const {
  std::vector<ModelSubset> out;
  for (const auto& e : entries) {
    if (e.maximal) out.push_back(e.model);
  }
  return out;
}

namespace {

void mark_admissible(SelectionClass& cls) {
  std::vector<std::vector<std::size_t>> by_size;
  for (std::size_t i = 0; i < cls.entries.size(); ++i) {
    const auto j = cls.entries[i].model.column_size();
    if (by_size.size() <= j) by_size.resize(j + 1);
    by_size[j].push_back(i);
  }
  for (const auto& group : by_size) {
    std::vector<Icri> icris;
    for (auto i : group) icris.push_back(cls.entries[i].icri);
    for (auto p : pareto_front(icris)) cls.entries[group[p]].admissible = true;
  }
}

}  // namespace

SelectionClass make_selection_class(std::vector<ModelSubset> models, const Dataset& ds,
                                    const std::vector<ModelSubset>& repaired) {
  std::sort(models.begin(), models.end());
  models.erase(std::unique(models.begin(), models.end()), models.end());
  SelectionClass cls;
  for (auto& m : models) {
    SelectionEntry e;
    e.report = model_report(m, ds);
    e.icri = e.report.icri;
    e.repaired = std::find(repaired.begin(), repaired.end(), m) != repaired.end();
    e.model = ModelSubset(m.columns(), ds.id);
    cls.entries.push_back(std::move(e));
  }
  for (auto& e : cls.entries) {
    e.maximal = std::none_of(cls.entries.begin(), cls.entries.end(), [&](const SelectionEntry& other) {
      return other.model.column_size() > e.model.column_size() && e.model.is_subset_of(other.model);
    });
  }
  mark_admissible(cls);
  return cls;
}

IScreenResult i_screen(const Dataset& ds, double c_q, const std::optional<ModelSubset>& universe) {
  if (!(c_q >= 0.0 && c_q < 1.0)) fail(ErrorCode::InvalidArgument, "c_q must lie in [0,1)");
  const ModelSubset base = universe ? *universe : full_model(ds);
  check_model(base, ds);
  IScreenResult out;
  std::vector<std::size_t> keep{kIntercept};
  for (auto c : base.regressors()) {
    const Vector x = ds.design.col(static_cast<Eigen::Index>(c));
    double q2 = 1.0;
    double i_index = std::numeric_limits<double>::infinity();
    try {
      q2 = q_squared(x);
      i_index = inefficiency_index(x);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ConstantColumn && e.code() != ErrorCode::ZeroVector) throw;
      // a zero column carries no information at all; treat it like a constant
      q2 = 1.0;
    }
    if (std::isfinite(i_index) && q2 <= c_q) {
      keep.push_back(c);
    } else {
      out.dropped.push_back({c, q2, i_index});
    }
  }
  out.survivors = ModelSubset(std::move(keep), ds.id);
  return out;
}

SelectionClass brute_force_dcd(const Dataset& ds, const ControlParams& params,
                               const std::optional<ModelSubset>& universe,
                               std::optional<std::size_t> max_column_size, std::size_t budget) {
  params.validate();
  const ModelSubset base = universe ? *universe : full_model(ds);
  check_model(base, ds);
  const std::size_t k = base.column_size();
  const std::size_t top = std::min(max_column_size.value_or(k), k);
  const std::size_t count = enumeration_count(k, top);
  if (count > budget) {
    fail(ErrorCode::BudgetExceeded, "exhaustive search needs " + std::to_string(count) +
                                        " models, budget is " + std::to_string(budget));
  }

  SelectionClass cls;
  std::set<std::vector<std::size_t>> members;
  for (std::size_t j = 2; j <= top; ++j) {
    for_each_model(k, j, [&](const ModelSubset& local) {
      std::vector<std::size_t> cols;
      for (auto c : local.columns()) cols.push_back(base.columns()[c]);
      ModelSubset m(std::move(cols), ds.id);
      MembershipVerdict v = in_class(m, ds, params);
      if (v.member) {
        members.insert(m.columns());
        SelectionEntry e;
        e.model = std::move(m);
        e.report = std::move(*v.report);
        e.icri = e.report.icri;
        cls.entries.push_back(std::move(e));
      }
      return true;
    });
  }
  std::sort(cls.entries.begin(), cls.entries.end(),
            [](const SelectionEntry& l, const SelectionEntry& r) { return l.model < r.model; });

  // A member is maximal when no one-column extension inside the universe is a
  // member. Extensions of size >= 3 are closed under removing a regressor, so
  // a larger superset would imply a one-step one.
  for (auto& e : cls.entries) {
    e.maximal = true;
    if (e.model.column_size() >= top) continue;
    for (auto c : base.regressors()) {
      if (e.model.contains(c)) continue;
      if (members.count(e.model.with(c).columns())) {
        e.maximal = false;
        break;
      }
    }
  }
  mark_admissible(cls);
  return cls;
}

}  // namespace eemx
