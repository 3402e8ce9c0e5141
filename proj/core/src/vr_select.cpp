#include "eemx/vr_select.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "eemx/errors.hpp"

namespace eemx {

StandardizedDesign standardize(const Matrix& regressors, std::vector<std::size_t> column_map) {
  if (column_map.size() != static_cast<std::size_t>(regressors.cols())) {
    fail(ErrorCode::DimensionMismatch, "column map does not match regressors");
  }
  const auto n = regressors.rows();
  StandardizedDesign out;
  out.z_matrix.resize(n, regressors.cols());
  out.source_means.resize(regressors.cols());
  out.source_stds.resize(regressors.cols());
  out.column_map = std::move(column_map);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < regressors.cols(); ++j) {
    const Vector x = regressors.col(j);
    const double mean = column_mean(x);
    const double s = column_std(x);
    const double raw = std::sqrt(x.squaredNorm() / static_cast<double>(n));
    if (!(s > 1e-12 * raw)) {
      fail(ErrorCode::ConstantColumn,
           "column " + std::to_string(out.column_map[static_cast<std::size_t>(j)]) + " is constant");
    }
    out.source_means(j) = mean;
    out.source_stds(j) = s;
    out.z_matrix.col(j) = (x.array() - mean) / (root_n * s);
  }
  return out;
}

StandardizedDesign standardize(const Dataset& ds, const ModelSubset& columns) {
  check_model(columns, ds);
  std::vector<std::size_t> map(columns.regressors().begin(), columns.regressors().end());
  return standardize(select_columns(ds.design, map), map);
}

double collinearity_identifier(const EigenDecomposition& eig, std::size_t m, std::size_t k) {
  const auto p = static_cast<std::size_t>(eig.eigenvalues.size());
  if (m >= p || k >= p) fail(ErrorCode::IndexOutOfRange, "component or variable index out of range");
  const double lambda = std::max(0.0, eig.eigenvalues(static_cast<Eigen::Index>(m)));
  return std::min(1.0, std::abs(std::sqrt(lambda) *
                                eig.eigenvectors(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m))));
}

PcaResult principal_components(const StandardizedDesign& std_design) {
  PcaResult out;
  out.eig = sym_eigen(correlation_matrix(std_design.z_matrix));
  const auto p = out.eig.eigenvalues.size();
  out.contributions = out.eig.eigenvalues / static_cast<double>(p);
  out.identifiers.resize(p, p);
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index m = 0; m < p; ++m) {
      out.identifiers(k, m) =
          collinearity_identifier(out.eig, static_cast<std::size_t>(m), static_cast<std::size_t>(k));
    }
  }
  return out;
}

std::vector<std::size_t> PccClass::columns() const {
  std::vector<std::size_t> out;
  for (const auto& m : members) out.push_back(m.column);
  return out;
}

PccClass pcc_class(const StandardizedDesign& std_design, const PcaResult& pca, std::size_t m, double a) {
  const auto p = static_cast<std::size_t>(pca.eig.eigenvalues.size());
  if (m >= p) fail(ErrorCode::IndexOutOfRange, "component index out of range");
  PccClass cls;
  cls.component = m;
  cls.eigenvalue = pca.eig.eigenvalues(static_cast<Eigen::Index>(m));
  cls.contribution = pca.contributions(static_cast<Eigen::Index>(m));
  cls.threshold = a;
  for (std::size_t k = 0; k < p; ++k) {
    const double d = pca.identifiers(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m));
    if (d >= a) cls.members.push_back({k, std_design.column_map[k], d});
  }
  return cls;
}

namespace {
void check_thresholds(double a, double b) {
  if (!(a >= 0.9 && a <= 1.0)) fail(ErrorCode::InvalidArgument, "a must lie in [0.9,1]");
  if (!(b > 0.0 && b < 1.0)) fail(ErrorCode::InvalidArgument, "b must lie in (0,1)");
}
}  // namespace

std::vector<PccClass> pcc_classes(const StandardizedDesign& std_design, const PcaResult& pca, double a,
                                  double b) {
  check_thresholds(a, b);
  std::vector<PccClass> out;
  const auto p = static_cast<std::size_t>(pca.contributions.size());
  for (std::size_t m = 0; m < p && pca.contributions(static_cast<Eigen::Index>(m)) >= b; ++m) {
    out.push_back(pcc_class(std_design, pca, m, a));
  }
  return out;
}

std::vector<PccClass> pcc_classes(const StandardizedDesign& std_design, double a, double b) {
  check_thresholds(a, b);
  return pcc_classes(std_design, principal_components(std_design), a, b);
}

std::vector<PairBound> pair_correlation_bounds(const PccClass& cls, const StandardizedDesign& std_design) {
  if (cls.members.size() < 2) fail(ErrorCode::ClassTooSmall, "bounds need at least two class members");
  constexpr double kSlack = 1e-12;
  const double a = cls.threshold;
  const double spread = 1.0 - a * a;
  std::vector<PairBound> out;
  for (std::size_t i = 0; i < cls.members.size(); ++i) {
    for (std::size_t j = i + 1; j < cls.members.size(); ++j) {
      const auto& mk = cls.members[i];
      const auto& mj = cls.members[j];
      PairBound pb;
      pb.k = mk.position;
      pb.j = mj.position;
      pb.abs_corr = std::abs(std_design.z_matrix.col(static_cast<Eigen::Index>(mk.position))
                                 .dot(std_design.z_matrix.col(static_cast<Eigen::Index>(mj.position))));
      const double prod = mk.identifier * mj.identifier;
      pb.lower = prod - spread;
      pb.upper = prod + spread;
      pb.floor = 2.0 * a * a - 1.0;
      pb.holds = pb.lower <= pb.abs_corr + kSlack && pb.abs_corr <= pb.upper + kSlack &&
                 pb.floor <= pb.lower + kSlack;
      out.push_back(pb);
    }
  }
  return out;
}

std::vector<ModelSubset> spawn_candidates(const ModelSubset& full_columns, const std::vector<PccClass>& classes) {
  std::vector<std::vector<std::size_t>> groups;
  std::set<std::size_t> grouped;
  for (const auto& cls : classes) {
    if (cls.members.size() < 2) continue;
    std::vector<std::size_t> cols;
    for (const auto& m : cls.members) {
      if (!full_columns.contains(m.column)) {
        fail(ErrorCode::InvalidArgument, "class member " + std::to_string(m.column) + " is not in the model");
      }
      if (!grouped.insert(m.column).second) {
        fail(ErrorCode::InvalidArgument, "PCC classes overlap at column " + std::to_string(m.column));
      }
      cols.push_back(m.column);
    }
    groups.push_back(std::move(cols));
  }

  std::vector<std::size_t> base;
  for (auto c : full_columns.columns()) {
    if (!grouped.count(c)) base.push_back(c);
  }

  std::vector<ModelSubset> out;
  std::vector<std::size_t> pick(groups.size(), 0);
  while (true) {
    auto cols = base;
    for (std::size_t g = 0; g < groups.size(); ++g) cols.push_back(groups[g][pick[g]]);
    out.emplace_back(std::move(cols), full_columns.parent_id());
    bool done = true;
    for (std::size_t g = groups.size(); g-- > 0;) {
      if (++pick[g] < groups[g].size()) {
        done = false;
        break;
      }
      pick[g] = 0;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> r_check_squared_all(const ModelSubset& model, const Dataset& ds) {
  const Matrix x = model_design(model, ds);
  const auto regs = model.regressors();
  std::vector<double> out(regs.size(), 1.0);
  if (regs.size() == 1) {
    out[0] = q_squared(x.col(1));
    return out;
  }
  for (std::size_t i = 0; i < regs.size(); ++i) {
    try {
      out[i] = cd_of_regression(i + 1, x);
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::Numerical) throw;
      out[i] = 1.0;
    }
  }
  return out;
}

CdReduction cd_reduce(const ModelSubset& candidate, const Dataset& ds, double d_R) {
  if (!(d_R >= 0.0 && d_R < 1.0)) fail(ErrorCode::InvalidArgument, "d_R must lie in [0,1)");
  CdReduction out{candidate, {}, {}};
  while (out.model.column_size() > 1) {
    const auto r2 = r_check_squared_all(out.model, ds);
    // strict comparison keeps the first (smallest column) maximum
    std::size_t worst = 0;
    for (std::size_t i = 1; i < r2.size(); ++i) {
      if (r2[i] > r2[worst]) worst = i;
    }
    if (r2[worst] <= d_R) break;
    const std::size_t col = out.model.regressors()[worst];
    out.deleted.push_back(col);
    out.deleted_r2.push_back(r2[worst]);
    out.model = out.model.without(col);
  }
  return out;
}

VrResult vr_algorithm(const Dataset& ds, const ControlParams& params, const std::optional<ModelSubset>& universe) {
  params.validate();
  VrResult out;
  out.screen = i_screen(ds, params.c_q, universe);
  ModelSubset survivors = out.screen.survivors;
  if (params.e_norm) {
    std::vector<std::size_t> keep{kIntercept};
    for (auto c : survivors.regressors()) {
      if (ds.design.col(static_cast<Eigen::Index>(c)).norm() >= *params.e_norm) keep.push_back(c);
    }
    survivors = ModelSubset(std::move(keep), ds.id);
  }
  if (survivors.column_size() < 2) return out;

  out.standardized = standardize(ds, survivors);
  out.pca = principal_components(*out.standardized);
  out.classes = pcc_classes(*out.standardized, *out.pca, params.a, params.b);
  out.candidates = spawn_candidates(survivors, out.classes);

  std::set<ModelSubset> models;
  for (const auto& cand : out.candidates) {
    out.reductions.push_back(cd_reduce(cand, ds, params.d_R));
    const auto& m = out.reductions.back().model;
    if (m.column_size() >= 2) models.insert(ModelSubset(m.columns(), ds.id));
  }
  out.models.assign(models.begin(), models.end());
  return out;
}

}  // namespace eemx
