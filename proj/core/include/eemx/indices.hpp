#pragma once

// Per-variable and per-model diagnostics: the squared raw correlation with
// the intercept (q^2), the inefficiency index I, the collinearity index C
// (the variance inflation factor), their product H, and the standard /
// predictive standard errors derived from them.

#include <cstddef>
#include <string>
#include <vector>

#include "eemx/numerics.hpp"

namespace eemx {

/// R^2 values within this distance of 1 count as perfect collinearity.
inline constexpr double kPerfectCollinearity = 1e-10;

/// (sum x)^2 / (N sum x^2): cos^2 of the angle between x and the ones vector.
double q_squared(const Vector& column);

/// I = 1 / (1 - q^2) = 1 + mean^2 / s^2, with the 1/N variance.
double inefficiency_index(const Vector& column);

/// C = 1 / (1 - R^2) where R^2 regresses column `target` on the rest of `design`.
double collinearity_index(std::size_t target, const Matrix& design);

double h_index(double i_index, double c_index);

/// Individual predictive sampling variance sigma^2 H / N.
double ind_psv(double h, double sigma_sq, std::size_t n);

/// Individual sampling variance sigma^2 VIF / (N s^2).
double ind_sv(double sigma_sq, std::size_t n, double s_xk, double vif);

struct VariableIndexReport {
  std::size_t variable_index = 0;  // column in the design it was computed from
  std::string name;
  double q_squared = 0.0;
  double i_index = 1.0;
  double r_check_squared = 0.0;
  double c_index = 1.0;
  double h_index = 1.0;
  double vif = 1.0;  // 1 / (1 - centred R^2); differs from c_index only for single-regressor models
  double mean = 0.0;
  double std_dev = 0.0;
  double norm_squared = 0.0;
  double eef_squared = 0.0;  // N s^2 (1 - R^2), reciprocal of the (k,k) entry of (X'X)^{-1}

  bool operator==(const VariableIndexReport&) const = default;
};

/// Inefficiency / collinearity risk index: componentwise maxima of I and C.
struct Icri {
  double c_m = 1.0;
  double d_m = 1.0;

  bool operator==(const Icri&) const = default;
};

struct ModelIndexReport {
  std::vector<VariableIndexReport> per_variable;
  double mean_h = 1.0;
  Icri icri;
  std::size_t column_size = 1;

  bool operator==(const ModelIndexReport&) const = default;
};

/// Report for one non-intercept column of `design`.
VariableIndexReport variable_index_report(const Matrix& design, std::size_t column);

/// Report for every non-intercept column of `design` (the design must hold an
/// all-ones column). `names`, when non-empty, labels the design's columns.
ModelIndexReport model_index_report(const Matrix& design,
                                    const std::vector<std::string>& names = {});

struct StandardErrors {
  double se = 0.0;
  double pse = 0.0;
};

/// SE = rse (N s^2)^{-1/2} sqrt(VIF);  PSE = rse N^{-1/2} sqrt(I VIF).
/// Both use the centred VIF, i.e. the actual sampling variance of the fit.
StandardErrors se_and_pse(const OlsFit& fit, const VariableIndexReport& report, std::size_t n);

/// Threshold conversions between the index and squared-correlation scales.
double level_from_squared(double squared_threshold);  // c = 1 / (1 - c_q)
double squared_from_level(double level);              // c_q = 1 - 1 / c

}  // namespace eemx
