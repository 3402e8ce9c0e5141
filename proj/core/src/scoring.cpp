#include "eemx/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eemx/errors.hpp"

namespace eemx {

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::Aic: return "aic";
    case Criterion::Bic: return "bic";
    case Criterion::AdjustedCd: return "adjr2";
    case Criterion::Rse: return "rse";
  }
  return "?";
}

Criterion parse_criterion(std::string_view text) {
  if (text == "aic") return Criterion::Aic;
  if (text == "bic") return Criterion::Bic;
  if (text == "adjr2" || text == "adjusted_cd") return Criterion::AdjustedCd;
  if (text == "rse") return Criterion::Rse;
  fail(ErrorCode::InvalidArgument, "unknown criterion '" + std::string(text) + "'");
}

ModelScore score_model(const ModelSubset& model, const Dataset& ds) {
  if (!ds.response) fail(ErrorCode::NoResponse, "scoring needs a response column");
  const Matrix x = model_design(model, ds);
  const std::size_t n = ds.rows();
  const std::size_t j = model.column_size();
  if (n <= j) fail(ErrorCode::SizeOutOfRange, "scoring needs more rows than model columns");

  OlsFit fit = ols_fit(x, *ds.response);
  // Residual norm at round-off level relative to |y| counts as rss = 0.
  const bool exact = fit.rss <= kExactFitTolerance * kExactFitTolerance * ds.response->squaredNorm();
  if (exact) {
    fit.residuals.setZero();
    fit.fitted = *ds.response;
    fit.rss = 0.0;
    fit.rse = 0.0;
    fit.cd = 1.0;
  }
  const ModelIndexReport report = model_report(model, ds);
  const auto nn = static_cast<double>(n);
  const auto jj = static_cast<double>(j);

  ModelScore s;
  s.model = model;
  s.rss = fit.rss;
  s.rse = fit.rse;
  s.cd = fit.cd;
  s.adjusted_cd = 1.0 - (1.0 - fit.cd) * (nn - 1.0) / (nn - jj);
  s.exact_fit = exact;
  if (s.exact_fit) {
    s.aic = -std::numeric_limits<double>::infinity();
    s.bic = -std::numeric_limits<double>::infinity();
  } else {
    const double ll = nn * std::log(fit.rss / nn);
    s.aic = ll + 2.0 * jj;
    s.bic = ll + jj * std::log(nn);
  }
  s.mean_h = report.mean_h;
  s.mean_h_scaled = fit.rse * report.mean_h / std::sqrt(nn);

  // per_variable lists the regressors in model order, after the intercept
  const auto& cols = model.columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    CoefficientScore c;
    c.column = cols[i];
    c.name = cols[i] < ds.names.size() ? ds.names[cols[i]] : std::to_string(cols[i]);
    c.coefficient = fit.coefficients(static_cast<Eigen::Index>(i));
    if (i == 0) {
      c.se = fit.rse * std::sqrt(fit.variance_factors(0));
      c.pse = c.se;
    } else {
      const auto se = se_and_pse(fit, report.per_variable[i - 1], n);
      c.se = se.se;
      c.pse = se.pse;
    }
    s.per_coef.push_back(std::move(c));
  }
  return s;
}

double criterion_value(const ModelScore& s, Criterion c) {
  switch (c) {
    case Criterion::Aic: return s.aic;
    case Criterion::Bic: return s.bic;
    case Criterion::AdjustedCd: return -s.adjusted_cd;
    case Criterion::Rse: return s.rse;
  }
  return 0.0;
}

std::vector<RankedScore> select_optimal(const std::vector<ModelSubset>& models, const Dataset& ds, Criterion c) {
  if (models.empty()) fail(ErrorCode::EmptyClass, "nothing to score: the selection class is empty");
  std::vector<ModelSubset> sorted = models;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<RankedScore> out;
  out.reserve(sorted.size());
  for (const auto& m : sorted) out.push_back({score_model(m, ds), 0, false});
  std::stable_sort(out.begin(), out.end(), [c](const RankedScore& l, const RankedScore& r) {
    return criterion_value(l.score, c) < criterion_value(r.score, c);
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
  out.front().best = true;
  return out;
}

std::vector<RankedScore> select_optimal(const SelectionClass& cls, const Dataset& ds, Criterion c) {
  return select_optimal(cls.models(), ds, c);
}

}  // namespace eemx
