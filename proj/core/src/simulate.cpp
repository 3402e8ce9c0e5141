#include "eemx/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "eemx/errors.hpp"
#include "eemx/random.hpp"
#include "eemx/vr_select.hpp"

namespace eemx {

void SimConfig::validate() const {
  const auto p = correlation.rows();
  if (p < 1 || correlation.cols() != p) fail(ErrorCode::DimensionMismatch, "correlation matrix must be square");
  for (Eigen::Index i = 0; i < p; ++i) {
    if (std::abs(correlation(i, i) - 1.0) > 1e-10) {
      fail(ErrorCode::InvalidArgument, "correlation matrix needs a unit diagonal");
    }
  }
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (n < static_cast<std::size_t>(p) + 1 || n < 3) {
    fail(ErrorCode::SizeOutOfRange, "sample size must exceed the number of variables");
  }
  if (!(a >= 0.9 && a <= 1.0)) fail(ErrorCode::InvalidArgument, "a must lie in [0.9,1]");
  if (!(b > 0.0 && b < 1.0)) fail(ErrorCode::InvalidArgument, "b must lie in (0,1)");
  if (!names.empty() && names.size() != static_cast<std::size_t>(p)) {
    fail(ErrorCode::DimensionMismatch, "one name per variable required");
  }
}

std::vector<std::string> SimConfig::labels() const {
  if (!names.empty()) return names;
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < correlation.rows(); ++i) out.push_back("v" + std::to_string(i + 1));
  return out;
}

Matrix generate_mvn(const Matrix& chol_lower, std::size_t n, std::uint64_t seed, std::uint64_t trial) {
  const auto p = chol_lower.rows();
  NormalStream stream(seed, trial);
  Matrix g(static_cast<Eigen::Index>(n), p);
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index c = 0; c < p; ++c) g(r, c) = stream.next();
  }
  return g * chol_lower.transpose();
}

Matrix generate_mvn(const SimConfig& config, std::uint64_t trial) {
  config.validate();
  return generate_mvn(cholesky_lower(config.correlation), config.n, config.seed, trial);
}

std::size_t FrequencyTable::count_of(const std::vector<std::size_t>& members) const {
  for (const auto& r : rows) {
    if (r.members == members) return r.count;
  }
  return 0;
}

namespace {

FrequencyTable to_table(const std::map<std::vector<std::size_t>, std::size_t>& tally, std::size_t total) {
  FrequencyTable t;
  t.total = total;
  for (const auto& [members, count] : tally) t.rows.push_back({members, count});
  std::stable_sort(t.rows.begin(), t.rows.end(),
                   [](const FrequencyRow& l, const FrequencyRow& r) { return l.count > r.count; });
  return t;
}

}  // namespace

SimulationReport pcc_frequency_study(const SimConfig& config) {
  config.validate();
  const Matrix chol = cholesky_lower(config.correlation);
  const auto p = static_cast<std::size_t>(config.correlation.rows());
  std::vector<std::size_t> positions(p);
  for (std::size_t i = 0; i < p; ++i) positions[i] = i;

  SimulationReport report;
  std::map<std::vector<std::size_t>, std::size_t> tally;
  std::map<std::vector<std::size_t>, std::size_t> vr_tally;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const Matrix sample = generate_mvn(chol, config.n, config.seed, trial);
    const StandardizedDesign z = standardize(sample, positions);
    const PcaResult pca = principal_components(z);

    std::vector<std::size_t> label;
    if (pca.contributions(0) >= config.b) {
      const PccClass cls = pcc_class(z, pca, 0, config.a);
      for (const auto& m : cls.members) label.push_back(m.position);
    }
    ++tally[label];

    // every class at this threshold, checked against the pairwise bounds
    std::set<std::size_t> seen;
    for (std::size_t m = 0; m < p; ++m) {
      const PccClass cls = pcc_class(z, pca, m, config.a);
      bool overlap = false;
      for (const auto& mem : cls.members) overlap |= !seen.insert(mem.position).second;
      if (overlap) ++report.disjointness_failures;
      if (cls.members.size() < 2) continue;
      for (const auto& pb : pair_correlation_bounds(cls, z)) {
        ++report.pair_checks;
        if (!pb.holds) ++report.pair_failures;
      }
    }

    if (config.full_vr) {
      std::vector<std::string> names = config.labels();
      const Dataset ds = make_dataset(sample, names);
      ControlParams params;
      params.c_q = config.c_q;
      params.d_R = config.d_R;
      params.a = config.a;
      params.b = config.b;
      for (const auto& model : vr_algorithm(ds, params).models) {
        std::vector<std::size_t> members;
        for (auto c : model.regressors()) members.push_back(c - 1);
        ++vr_tally[members];
      }
    }
  }
  report.pcc = to_table(tally, config.trials);
  if (config.full_vr) report.vr_models = to_table(vr_tally, config.trials);
  return report;
}

}  // namespace eemx
