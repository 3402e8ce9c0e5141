#include "eemx/indices.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eemx/errors.hpp"

namespace eemx {

double q_squared(const Vector& column) {
  const double sum_sq = column.squaredNorm();
  if (!(sum_sq > 0.0)) fail(ErrorCode::ZeroVector, "q^2 undefined for the zero vector");
  const double sum = column.sum();
  return std::min(1.0, sum * sum / (static_cast<double>(column.size()) * sum_sq));
}

double inefficiency_index(const Vector& column) {
  const double s = column_std(column);
  const double raw = std::sqrt(column.squaredNorm() / static_cast<double>(column.size()));
  if (!(s > 1e-12 * raw)) {
    fail(ErrorCode::ConstantColumn, "I-index infinite; variable is immobile");
  }
  const double mean = column_mean(column);
  return 1.0 + (mean * mean) / (s * s);
}

double collinearity_index(std::size_t target, const Matrix& design) {
  const double r2 = cd_of_regression(target, design);
  if (r2 >= 1.0 - kPerfectCollinearity) {
    fail(ErrorCode::PerfectCollinearity,
         "column " + std::to_string(target) + " is perfectly collinear with the others");
  }
  return 1.0 / (1.0 - r2);
}

double h_index(double i_index, double c_index) { return i_index * c_index; }

double ind_psv(double h, double sigma_sq, std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "sample size must be positive");
  return sigma_sq * h / static_cast<double>(n);
}

double ind_sv(double sigma_sq, std::size_t n, double s_xk, double vif) {
  if (!(s_xk > 0.0)) fail(ErrorCode::InvalidArgument, "s_xk must be positive");
  if (n == 0) fail(ErrorCode::InvalidArgument, "sample size must be positive");
  return sigma_sq * vif / (static_cast<double>(n) * s_xk * s_xk);
}

VariableIndexReport variable_index_report(const Matrix& design, std::size_t column) {
  const Vector x = design.col(static_cast<Eigen::Index>(column));
  const auto n = static_cast<double>(x.size());
  VariableIndexReport r;
  r.variable_index = column;
  r.q_squared = q_squared(x);
  r.i_index = inefficiency_index(x);
  r.mean = column_mean(x);
  r.std_dev = column_std(x);
  r.norm_squared = x.squaredNorm();
  r.r_check_squared = cd_of_regression(column, design);
  if (r.r_check_squared >= 1.0 - kPerfectCollinearity) {
    fail(ErrorCode::PerfectCollinearity,
         "column " + std::to_string(column) + " is perfectly collinear with the others");
  }
  r.c_index = 1.0 / (1.0 - r.r_check_squared);
  r.vif = r.c_index;
  r.h_index = h_index(r.i_index, r.c_index);
  r.eef_squared = n * r.std_dev * r.std_dev * (1.0 - r.r_check_squared);
  return r;
}

ModelIndexReport model_index_report(const Matrix& design, const std::vector<std::string>& names) {
  if (!names.empty() && names.size() != static_cast<std::size_t>(design.cols())) {
    fail(ErrorCode::DimensionMismatch, "names do not match design columns");
  }
  ModelIndexReport report;
  report.column_size = static_cast<std::size_t>(design.cols());
  bool seen_intercept = false;
  for (Eigen::Index j = 0; j < design.cols(); ++j) {
    const auto col = static_cast<std::size_t>(j);
    if (!seen_intercept && is_ones_column(design, col)) {
      seen_intercept = true;
      continue;
    }
    VariableIndexReport v = variable_index_report(design, col);
    if (!names.empty()) v.name = names[col];
    report.per_variable.push_back(std::move(v));
  }
  if (!seen_intercept) fail(ErrorCode::InvalidArgument, "design lacks an intercept column");

  // With a single regressor the only collinearity left is with e itself, so C
  // is measured by the raw correlation and coincides with I.
  if (report.per_variable.size() == 1) {
    auto& v = report.per_variable.front();
    v.r_check_squared = v.q_squared;
    v.c_index = v.i_index;
    v.h_index = v.i_index * v.i_index;
  }

  if (!report.per_variable.empty()) {
    double h_sum = 0.0;
    report.icri = {0.0, 0.0};
    for (const auto& v : report.per_variable) {
      report.icri.c_m = std::max(report.icri.c_m, v.i_index);
      report.icri.d_m = std::max(report.icri.d_m, v.c_index);
      h_sum += v.h_index;
    }
    report.mean_h = h_sum / static_cast<double>(report.per_variable.size());
  }
  return report;
}

StandardErrors se_and_pse(const OlsFit& fit, const VariableIndexReport& report, std::size_t n) {
  const auto nn = static_cast<double>(n);
  StandardErrors out;
  out.se = fit.rse / std::sqrt(nn * report.std_dev * report.std_dev) * std::sqrt(report.vif);
  out.pse = fit.rse / std::sqrt(nn) * std::sqrt(report.i_index * report.vif);
  return out;
}

double level_from_squared(double squared_threshold) {
  if (!(squared_threshold >= 0.0 && squared_threshold < 1.0)) {
    fail(ErrorCode::InvalidArgument, "squared-correlation threshold must lie in [0,1)");
  }
  return 1.0 / (1.0 - squared_threshold);
}

double squared_from_level(double level) {
  if (!(level >= 1.0)) fail(ErrorCode::InvalidArgument, "index level must be >= 1");
  return 1.0 - 1.0 / level;
}

}  // namespace eemx
