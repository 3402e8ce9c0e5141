#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <optional>
#include <ostream>

#include "eemx/dataset.hpp"
#include "eemx/errors.hpp"
#include "eemx/fixtures.hpp"
#include "eemx/pipeline.hpp"
#include "eemx/report_io.hpp"
#include "eemx/simulate.hpp"

namespace eemx::cli {
namespace {

// Both parameterizations of a threshold, q-scale and index-scale.
constexpr double kLevelConsistency = 1e-9;

struct Settings {
  std::string file;
  std::string response;
  double cq = 0.9, dr = 0.9, c = 10.0, d = 10.0, a = 0.9, b = 0.4, e_norm = 0.0;
  std::string algo = "vi";
  std::string criterion = "adjr2";
  std::string format = "text";
  std::size_t max_enum = kDefaultEnumerationBudget;
  // simulate
  std::string phi;
  std::size_t n = 50;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  bool full_vr = false;
  // fixtures
  std::string kind = "helmert";
  std::size_t fixture_n = 10;
  std::size_t k = 4;
  double parameter = 0.05;
};

struct ThresholdOptions {
  CLI::Option* cq = nullptr;
  CLI::Option* dr = nullptr;
  CLI::Option* c = nullptr;
  CLI::Option* d = nullptr;
  CLI::Option* a = nullptr;
  CLI::Option* b = nullptr;
  CLI::Option* e_norm = nullptr;
};

ThresholdOptions add_thresholds(CLI::App* app, Settings& s) {
  ThresholdOptions t;
  t.cq = app->add_option("--cq", s.cq, "I-index level on the q^2 scale, in [0,1)");
  t.dr = app->add_option("--dr", s.dr, "C-index level on the R^2 scale, in [0,1)");
  t.c = app->add_option("--c", s.c, "I-index level, >= 1");
  t.d = app->add_option("--d", s.d, "C-index level, >= 1");
  t.a = app->add_option("--a", s.a, "PCC membership threshold (default 0.9)");
  t.b = app->add_option("--b", s.b, "PC contribution threshold (default 0.4)");
  t.e_norm = app->add_option("--e-norm", s.e_norm, "lower bound on column norms");
  return t;
}

double resolve_level(const CLI::Option* squared, double sq_value, const CLI::Option* index, double index_value,
                     const char* name) {
  if (index->count() > 0 && !(index_value >= 1.0)) {
    fail(ErrorCode::InvalidArgument, std::string("--") + name + " must be >= 1");
  }
  if (index->count() == 0) return sq_value;
  const double from_index = squared_from_level(index_value);
  if (squared->count() > 0 && std::abs(from_index - sq_value) > kLevelConsistency) {
    fail(ErrorCode::InvalidArgument, std::string("--") + name + " disagrees with its squared-scale counterpart");
  }
  return from_index;
}

ControlParams resolve_params(const ThresholdOptions& t, const Settings& s) {
  ControlParams p;
  p.c_q = resolve_level(t.cq, s.cq, t.c, s.c, "c");
  p.d_R = resolve_level(t.dr, s.dr, t.d, s.d, "d");
  p.a = s.a;
  p.b = s.b;
  if (t.e_norm->count() > 0) p.e_norm = s.e_norm;
  p.validate();
  return p;
}

bool json_format(const Settings& s) {
  if (s.format == "json") return true;
  if (s.format == "text") return false;
  fail(ErrorCode::InvalidArgument, "--format must be text or json");
}

Dataset load(const Settings& s) {
  std::optional<std::string> response;
  if (!s.response.empty()) response = s.response;
  return load_csv(s.file, response);
}

void run_select(const Settings& s, const ThresholdOptions& t, bool require_response, std::ostream& out) {
  if (require_response && s.response.empty()) fail(ErrorCode::NoResponse, "score needs --response");
  const ControlParams params = resolve_params(t, s);
  RunOptions o;
  o.algorithm = parse_algorithm(s.algo);
  o.criterion = parse_criterion(s.criterion);
  o.budget = s.max_enum;
  const Dataset ds = load(s);
  const RunReport r = run_pipeline(ds, params, o);
  out << (json_format(s) ? render_json(r) : render_text(r));
}

void run_simulate(const Settings& s, const ThresholdOptions& t, std::ostream& out) {
  const ControlParams params = resolve_params(t, s);
  const Dataset phi = load_csv(s.phi);
  SimConfig cfg;
  cfg.correlation = phi.design.rightCols(phi.design.cols() - 1);
  cfg.names.assign(phi.names.begin() + 1, phi.names.end());
  cfg.n = s.n;
  cfg.trials = s.trials;
  cfg.a = params.a;
  cfg.b = params.b;
  cfg.seed = s.seed;
  cfg.full_vr = s.full_vr;
  cfg.c_q = params.c_q;
  cfg.d_R = params.d_R;
  const SimulationReport r = pcc_frequency_study(cfg);
  out << (json_format(s) ? render_json(r, cfg) : render_text(r, cfg));
}

void run_fixtures(const Settings& s, std::ostream& out) {
  FixtureSpec spec;
  spec.kind = parse_fixture_kind(s.kind);
  spec.n = s.fixture_n;
  spec.k = s.k;
  spec.parameter = s.parameter;
  spec.seed = s.seed;
  const Dataset ds = make_fixture(spec);
  write_csv(out, std::vector<std::string>(ds.names.begin() + 1, ds.names.end()),
            ds.design.rightCols(ds.design.cols() - 1));
}

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Usage: return kExitUsage;
    case ErrorCategory::Data: return kExitData;
    case ErrorCategory::Numerical: return kExitNumerical;
  }
  return kExitData;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Model selection by inefficiency and collinearity indices"};
  app.name("eemx");
  app.require_subcommand(1);

  auto* indices = app.add_subcommand("indices", "I, C and H indices of the full model");
  indices->add_option("file", s.file, "CSV with a header row")->required();
  indices->add_option("--response", s.response, "response column to exclude from the design");
  indices->add_option("--format", s.format, "text or json");

  auto* screen = app.add_subcommand("screen", "drop variables whose q^2 exceeds the I level");
  screen->add_option("file", s.file, "CSV with a header row")->required();
  screen->add_option("--response", s.response, "response column to exclude from the design");
  screen->add_option("--format", s.format, "text or json");
  const auto screen_t = add_thresholds(screen, s);

  auto* select = app.add_subcommand("select", "select the accommodating class");
  select->add_option("file", s.file, "CSV with a header row")->required();
  select->add_option("--algo", s.algo, "vi, vr or brute");
  select->add_option("--response", s.response, "response column; enables scoring");
  select->add_option("--criterion", s.criterion, "aic, bic, adjr2 or rse");
  select->add_option("--max-enum", s.max_enum, "state budget for brute force and vi");
  select->add_option("--format", s.format, "text or json");
  const auto select_t = add_thresholds(select, s);

  auto* score = app.add_subcommand("score", "select, then rank the class against the response");
  score->add_option("file", s.file, "CSV with a header row")->required();
  score->add_option("--response", s.response, "response column")->required();
  score->add_option("--algo", s.algo, "vi, vr or brute");
  score->add_option("--criterion", s.criterion, "aic, bic, adjr2 or rse");
  score->add_option("--max-enum", s.max_enum, "state budget for brute force and vi");
  score->add_option("--format", s.format, "text or json");
  const auto score_t = add_thresholds(score, s);

  auto* simulate = app.add_subcommand("simulate", "PCC class frequencies under N(0, Phi) designs");
  simulate->add_option("--phi", s.phi, "CSV holding the correlation matrix, header = names")->required();
  simulate->add_option("--n", s.n, "rows per simulated design");
  simulate->add_option("--trials", s.trials, "number of simulated designs");
  simulate->add_option("--seed", s.seed, "random seed");
  simulate->add_flag("--full-vr", s.full_vr, "also tally the models of the whole VR run");
  simulate->add_option("--format", s.format, "text or json");
  const auto simulate_t = add_thresholds(simulate, s);

  auto* fixtures = app.add_subcommand("fixtures", "write a fixture design as CSV");
  fixtures->add_option("--kind", s.kind, "helmert, duplicate_pair, near_collinear, identity_corr, gasoline_surrogate");
  fixtures->add_option("--n", s.fixture_n, "rows");
  fixtures->add_option("--k", s.k, "design columns including the intercept");
  fixtures->add_option("--param", s.parameter, "perturbation or epsilon");
  fixtures->add_option("--seed", s.seed, "random seed");

  std::vector<const char*> argv{"eemx"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (indices->parsed()) {
      const Dataset ds = load(s);
      const auto r = model_report(full_model(ds), ds);
      out << (json_format(s) ? render_json(r) : render_text(r));
    } else if (screen->parsed()) {
      const ControlParams p = resolve_params(screen_t, s);
      const Dataset ds = load(s);
      const auto r = i_screen(ds, p.c_q);
      out << (json_format(s) ? render_json(r, ds) : render_text(r, ds));
    } else if (select->parsed()) {
      run_select(s, select_t, false, out);
    } else if (score->parsed()) {
      run_select(s, score_t, true, out);
    } else if (simulate->parsed()) {
      run_simulate(s, simulate_t, out);
    } else if (fixtures->parsed()) {
      run_fixtures(s, out);
    }
  } catch (const Error& e) {
    err << "eemx: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitOk;
}

}  // namespace eemx::cli
