#pragma once

// Submodels of a dataset, the IC-controlled class D^cd, ICRI comparison and
// admissibility.

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eemx/dataset.hpp"
#include "eemx/indices.hpp"

namespace eemx {

/// Column 0 of every dataset design is the intercept.
inline constexpr std::size_t kIntercept = 0;

/// A submodel as a sorted set of dataset columns that always holds the
/// intercept. Ordering and equality are on the column list alone.
class ModelSubset {
 public:
  ModelSubset() : columns_{kIntercept} {}
  explicit ModelSubset(std::vector<std::size_t> columns, std::string parent_id = {});

  const std::vector<std::size_t>& columns() const { return columns_; }
  std::size_t column_size() const { return columns_.size(); }
  const std::string& parent_id() const { return parent_id_; }

  /// Non-intercept columns.
  std::span<const std::size_t> regressors() const {
    return std::span<const std::size_t>(columns_).subspan(1);
  }

  bool contains(std::size_t column) const;
  bool is_subset_of(const ModelSubset& other) const;
  ModelSubset with(std::size_t column) const;
  ModelSubset without(std::size_t column) const;  // the intercept cannot be removed

  friend ModelSubset intersect(const ModelSubset& a, const ModelSubset& b);

  bool operator==(const ModelSubset& other) const { return columns_ == other.columns_; }
  std::strong_ordering operator<=>(const ModelSubset& other) const {
    return columns_ <=> other.columns_;
  }

 private:
  std::vector<std::size_t> columns_;
  std::string parent_id_;
};

/// The full model of a dataset.
ModelSubset full_model(const Dataset& ds);

/// Checks every column index against the dataset (IndexOutOfRange).
void check_model(const ModelSubset& model, const Dataset& ds);

/// Submatrix of the dataset design holding the model's columns, in order.
Matrix model_design(const ModelSubset& model, const Dataset& ds);

/// "{_const, X2, X7}" using dataset names.
std::string model_label(const ModelSubset& model, const Dataset& ds);

struct ControlParams {
  double c_q = 0.9;
  double d_R = 0.9;
  double a = 0.9;
  double b = 0.4;
  std::optional<double> e_norm;

  double c() const { return level_from_squared(c_q); }
  double d() const { return level_from_squared(d_R); }

  /// Throws InvalidArgument when a field is outside its range.
  void validate() const;

  static ControlParams from_levels(double c, double d, double a = 0.9, double b = 0.4,
                                   std::optional<double> e_norm = std::nullopt);

  bool operator==(const ControlParams&) const = default;
};

/// Every model of the given column size, lexicographic; count C(K-1, J-1).
std::vector<ModelSubset> enumerate_models(std::size_t total_columns, std::size_t column_size);

/// Visits the same sequence without materializing it. Returning false stops.
void for_each_model(std::size_t total_columns, std::size_t column_size,
                    const std::function<bool(const ModelSubset&)>& visit);

enum class ViolationKind { Inefficiency, Collinearity, Norm, Degenerate };

struct Violation {
  std::size_t column = 0;  // dataset column; 0 when the whole model is degenerate
  ViolationKind kind = ViolationKind::Degenerate;
  double value = 0.0;  // q^2, R^2 or ||x||
  double limit = 0.0;  // c_q, d_R or e_norm
  std::string detail;
};

struct MembershipVerdict {
  bool member = false;
  std::vector<Violation> violations;
  std::optional<ModelIndexReport> report;  // absent when the model is degenerate
};

/// D^cd (or D^cde with e_norm) membership. Comparisons happen on the squared
/// correlation scale: q^2 <= c_q, R^2 <= d_R, ||x|| >= e_norm. Rank-deficient
/// or constant-column models come back as non-members with a Degenerate entry.
MembershipVerdict in_class(const ModelSubset& model, const Dataset& ds, const ControlParams& params);

/// Index report of a submodel with names and dataset column numbers filled in.
ModelIndexReport model_report(const ModelSubset& model, const Dataset& ds);

Icri icri(const ModelSubset& model, const Dataset& ds);

enum class Accommodation { Better, Worse, Equal, Incomparable };

/// Componentwise dominance of ICRIs; only defined for equal column sizes.
Accommodation better_accommodates(const Icri& m1, const Icri& m2, bool same_column_size);

/// Positions of the entries not dominated by any other entry.
std::vector<std::size_t> pareto_front(std::span<const Icri> icris);

/// Models of one column size that no peer better accommodates.
std::vector<ModelSubset> admissible_set(std::span<const ModelSubset> models, const Dataset& ds);

struct SelectionEntry {
  ModelSubset model;
  Icri icri;
  ModelIndexReport report;
  bool admissible = false;  // Pareto-minimal among entries of the same column size
  bool maximal = false;     // no proper superset inside the class
  bool repaired = false;    // produced by the VI over-admission repair

  bool operator==(const SelectionEntry&) const = default;
};

struct SelectionClass {
  std::vector<SelectionEntry> entries;  // lexicographic by column list

  std::vector<ModelSubset> models() const;
  std::vector<ModelSubset> maximal_models() const;
  bool operator==(const SelectionClass&) const = default;
};

/// Builds a class from member models: computes reports, sorts, and sets the
/// admissible flags. `maximal` is set by set inclusion among the given models.
SelectionClass make_selection_class(std::vector<ModelSubset> models, const Dataset& ds,
                                    const std::vector<ModelSubset>& repaired = {});

struct DroppedColumn {
  std::size_t column = 0;
  double q_squared = 1.0;
  double i_index = 0.0;  // +inf for a constant column
  bool operator==(const DroppedColumn&) const = default;
};

struct IScreenResult {
  ModelSubset survivors;
  std::vector<DroppedColumn> dropped;
  bool operator==(const IScreenResult&) const = default;
};

/// Drops every regressor of `universe` (default: all) with q^2 > c_q.
IScreenResult i_screen(const Dataset& ds, double c_q,
                       const std::optional<ModelSubset>& universe = std::nullopt);

inline constexpr std::size_t kDefaultEnumerationBudget = std::size_t{1} << 20;

/// Exact D^cd by testing every submodel of `universe` (default: the full
/// model) with 2 <= J <= max_column_size. The maximal flag here means maximal
/// within D^cd itself. Refuses with BudgetExceeded above `budget` models.
SelectionClass brute_force_dcd(const Dataset& ds, const ControlParams& params,
                               const std::optional<ModelSubset>& universe = std::nullopt,
                               std::optional<std::size_t> max_column_size = std::nullopt,
                               std::size_t budget = kDefaultEnumerationBudget);

/// Number of models with 2 <= J <= max_column_size drawn from `total_columns`
/// columns (intercept included); saturates at SIZE_MAX.
std::size_t enumeration_count(std::size_t total_columns, std::size_t max_column_size);

}  // namespace eemx
