#include "eemx/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eemx/errors.hpp"

namespace eemx {

using json = nlohmann::ordered_json;

std::string format_sig(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

namespace {

// ---- numbers ---------------------------------------------------------------

json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double get_num(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    fail(ErrorCode::ParseError, "expected a number, found \"" + s + "\"");
  }
  if (!j.is_number()) fail(ErrorCode::ParseError, "expected a number");
  return j.get<double>();
}

// ---- building blocks -------------------------------------------------------

json model_json(const ModelSubset& m) { return json{{"columns", m.columns()}, {"parent_id", m.parent_id()}}; }

ModelSubset model_from(const json& j) {
  return ModelSubset(j.at("columns").get<std::vector<std::size_t>>(), j.at("parent_id").get<std::string>());
}

json variable_json(const VariableIndexReport& v) {
  return json{{"variable_index", v.variable_index},
              {"name", v.name},
              {"q_squared", num(v.q_squared)},
              {"i_index", num(v.i_index)},
              {"r_check_squared", num(v.r_check_squared)},
              {"c_index", num(v.c_index)},
              {"h_index", num(v.h_index)},
              {"vif", num(v.vif)},
              {"mean", num(v.mean)},
              {"std_dev", num(v.std_dev)},
              {"norm_squared", num(v.norm_squared)},
              {"eef_squared", num(v.eef_squared)}};
}

VariableIndexReport variable_from(const json& j) {
  VariableIndexReport v;
  v.variable_index = j.at("variable_index").get<std::size_t>();
  v.name = j.at("name").get<std::string>();
  v.q_squared = get_num(j.at("q_squared"));
  v.i_index = get_num(j.at("i_index"));
  v.r_check_squared = get_num(j.at("r_check_squared"));
  v.c_index = get_num(j.at("c_index"));
  v.h_index = get_num(j.at("h_index"));
  v.vif = get_num(j.at("vif"));
  v.mean = get_num(j.at("mean"));
  v.std_dev = get_num(j.at("std_dev"));
  v.norm_squared = get_num(j.at("norm_squared"));
  v.eef_squared = get_num(j.at("eef_squared"));
  return v;
}

json icri_json(const Icri& i) { return json{{"c_m", num(i.c_m)}, {"d_m", num(i.d_m)}}; }
Icri icri_from(const json& j) { return {get_num(j.at("c_m")), get_num(j.at("d_m"))}; }

json index_json(const ModelIndexReport& r) {
  json vars = json::array();
  for (const auto& v : r.per_variable) vars.push_back(variable_json(v));
  return json{{"column_size", r.column_size}, {"mean_h", num(r.mean_h)}, {"icri", icri_json(r.icri)},
              {"per_variable", vars}};
}

ModelIndexReport index_from(const json& j) {
  ModelIndexReport r;
  r.column_size = j.at("column_size").get<std::size_t>();
  r.mean_h = get_num(j.at("mean_h"));
  r.icri = icri_from(j.at("icri"));
  for (const auto& v : j.at("per_variable")) r.per_variable.push_back(variable_from(v));
  return r;
}

json params_json(const ControlParams& p) {
  json j{{"c_q", num(p.c_q)}, {"d_R", num(p.d_R)}, {"a", num(p.a)}, {"b", num(p.b)}};
  j["e_norm"] = p.e_norm ? num(*p.e_norm) : json(nullptr);
  return j;
}

ControlParams params_from(const json& j) {
  ControlParams p;
  p.c_q = get_num(j.at("c_q"));
  p.d_R = get_num(j.at("d_R"));
  p.a = get_num(j.at("a"));
  p.b = get_num(j.at("b"));
  if (!j.at("e_norm").is_null()) p.e_norm = get_num(j.at("e_norm"));
  return p;
}

json screen_json(const IScreenResult& s) {
  json dropped = json::array();
  for (const auto& d : s.dropped) {
    dropped.push_back(json{{"column", d.column}, {"q_squared", num(d.q_squared)}, {"i_index", num(d.i_index)}});
  }
  return json{{"survivors", model_json(s.survivors)}, {"dropped", dropped}};
}

IScreenResult screen_from(const json& j) {
  IScreenResult s;
  s.survivors = model_from(j.at("survivors"));
  for (const auto& d : j.at("dropped")) {
    s.dropped.push_back({d.at("column").get<std::size_t>(), get_num(d.at("q_squared")), get_num(d.at("i_index"))});
  }
  return s;
}

json pcc_json(const PccClass& c) {
  json members = json::array();
  for (const auto& m : c.members) {
    members.push_back(json{{"position", m.position}, {"column", m.column}, {"identifier", num(m.identifier)}});
  }
  return json{{"component", c.component},
              {"label", component_label(c.component)},
              {"eigenvalue", num(c.eigenvalue)},
              {"contribution", num(c.contribution)},
              {"threshold", num(c.threshold)},
              {"members", members}};
}

PccClass pcc_from(const json& j) {
  PccClass c;
  c.component = j.at("component").get<std::size_t>();
  c.eigenvalue = get_num(j.at("eigenvalue"));
  c.contribution = get_num(j.at("contribution"));
  c.threshold = get_num(j.at("threshold"));
  for (const auto& m : j.at("members")) {
    c.members.push_back(
        {m.at("position").get<std::size_t>(), m.at("column").get<std::size_t>(), get_num(m.at("identifier"))});
  }
  return c;
}

json entry_json(const SelectionEntry& e) {
  return json{{"model", model_json(e.model)}, {"icri", icri_json(e.icri)},     {"admissible", e.admissible},
              {"maximal", e.maximal},         {"repaired", e.repaired},        {"report", index_json(e.report)}};
}

SelectionEntry entry_from(const json& j) {
  SelectionEntry e;
  e.model = model_from(j.at("model"));
  e.icri = icri_from(j.at("icri"));
  e.admissible = j.at("admissible").get<bool>();
  e.maximal = j.at("maximal").get<bool>();
  e.repaired = j.at("repaired").get<bool>();
  e.report = index_from(j.at("report"));
  return e;
}

json score_json(const RankedScore& r) {
  const ModelScore& s = r.score;
  json coefs = json::array();
  for (const auto& c : s.per_coef) {
    coefs.push_back(json{{"column", c.column}, {"name", c.name}, {"coefficient", num(c.coefficient)},
                         {"se", num(c.se)}, {"pse", num(c.pse)}});
  }
  return json{{"rank", r.rank},
              {"best", r.best},
              {"model", model_json(s.model)},
              {"rss", num(s.rss)},
              {"rse", num(s.rse)},
              {"cd", num(s.cd)},
              {"adjusted_cd", num(s.adjusted_cd)},
              {"aic", num(s.aic)},
              {"bic", num(s.bic)},
              {"mean_h", num(s.mean_h)},
              {"mean_h_scaled", num(s.mean_h_scaled)},
              {"exact_fit", s.exact_fit},
              {"per_coef", coefs}};
}

RankedScore score_from(const json& j) {
  RankedScore r;
  r.rank = j.at("rank").get<std::size_t>();
  r.best = j.at("best").get<bool>();
  ModelScore& s = r.score;
  s.model = model_from(j.at("model"));
  s.rss = get_num(j.at("rss"));
  s.rse = get_num(j.at("rse"));
  s.cd = get_num(j.at("cd"));
  s.adjusted_cd = get_num(j.at("adjusted_cd"));
  s.aic = get_num(j.at("aic"));
  s.bic = get_num(j.at("bic"));
  s.mean_h = get_num(j.at("mean_h"));
  s.mean_h_scaled = get_num(j.at("mean_h_scaled"));
  s.exact_fit = j.at("exact_fit").get<bool>();
  for (const auto& c : j.at("per_coef")) {
    s.per_coef.push_back({c.at("column").get<std::size_t>(), c.at("name").get<std::string>(),
                          get_num(c.at("coefficient")), get_num(c.at("se")), get_num(c.at("pse"))});
  }
  return r;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- text helpers ----------------------------------------------------------

std::string name_of(const std::vector<std::string>& names, std::size_t col) {
  return col < names.size() ? names[col] : std::to_string(col);
}

std::string label(const ModelSubset& m, const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < m.columns().size(); ++i) {
    if (i) out += ", ";
    out += name_of(names, m.columns()[i]);
  }
  return out + "}";
}

/// Right-aligned table with a header row.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void write(std::ostream& os, const std::string& indent = "  ") const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    for (const auto& r : rows_) {
      os << indent;
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (c) os << "  ";
        if (c == 0) {
          os << std::left << std::setw(static_cast<int>(width[c])) << r[c];
        } else {
          os << std::right << std::setw(static_cast<int>(width[c])) << r[c];
        }
      }
      os << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

void write_index_table(std::ostream& os, const ModelIndexReport& r) {
  Table t({"variable", "q2", "I", "R2", "C", "H", "mean", "s", "EEF2"});
  for (const auto& v : r.per_variable) {
    t.add({v.name.empty() ? std::to_string(v.variable_index) : v.name, format_sig(v.q_squared),
           format_sig(v.i_index), format_sig(v.r_check_squared), format_sig(v.c_index), format_sig(v.h_index),
           format_sig(v.mean), format_sig(v.std_dev), format_sig(v.eef_squared)});
  }
  t.write(os);
  os << "  ICRI (" << format_sig(r.icri.c_m) << ", " << format_sig(r.icri.d_m) << ")  mean H "
     << format_sig(r.mean_h) << "  J " << r.column_size << '\n';
}

}  // namespace

std::string render_json(const RunReport& r) {
  json j;
  j["dataset_id"] = r.dataset_id;
  j["names"] = r.names;
  j["rows"] = r.rows;
  j["response_name"] = r.response_name;
  j["params"] = params_json(r.params);
  j["algorithm"] = std::string(to_string(r.algorithm));
  j["criterion"] = std::string(to_string(r.criterion));
  j["index_table"] = r.index_table ? index_json(*r.index_table) : json(nullptr);
  j["i_screen"] = screen_json(r.screen);
  json classes = json::array();
  for (const auto& c : r.pcc_classes) classes.push_back(pcc_json(c));
  j["pcc_classes"] = classes;
  json entries = json::array();
  for (const auto& e : r.selection.entries) entries.push_back(entry_json(e));
  j["selection_class"] = entries;
  if (r.scores) {
    json scores = json::array();
    for (const auto& s : *r.scores) scores.push_back(score_json(s));
    j["scores"] = scores;
  } else {
    j["scores"] = nullptr;
  }
  j["warnings"] = r.warnings;
  return dump(j);
}

RunReport parse_run_report(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.dataset_id = j.at("dataset_id").get<std::string>();
    r.names = j.at("names").get<std::vector<std::string>>();
    r.rows = j.at("rows").get<std::size_t>();
    r.response_name = j.at("response_name").get<std::string>();
    r.params = params_from(j.at("params"));
    r.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    r.criterion = parse_criterion(j.at("criterion").get<std::string>());
    if (!j.at("index_table").is_null()) r.index_table = index_from(j.at("index_table"));
    r.screen = screen_from(j.at("i_screen"));
    for (const auto& c : j.at("pcc_classes")) r.pcc_classes.push_back(pcc_from(c));
    for (const auto& e : j.at("selection_class")) r.selection.entries.push_back(entry_from(e));
    if (!j.at("scores").is_null()) {
      r.scores.emplace();
      for (const auto& s : j.at("scores")) r.scores->push_back(score_from(s));
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
}

std::string render_text(const RunReport& r) {
  std::ostringstream os;
  os << "dataset " << r.dataset_id << "  N=" << r.rows << "  K=" << r.names.size();
  if (!r.response_name.empty()) os << "  response " << r.response_name;
  os << "\ncontrol c_q=" << format_sig(r.params.c_q) << " (c=" << format_sig(r.params.c()) << ")"
     << "  d_R=" << format_sig(r.params.d_R) << " (d=" << format_sig(r.params.d()) << ")";
  if (r.algorithm == Algorithm::Vr) os << "  a=" << format_sig(r.params.a) << "  b=" << format_sig(r.params.b);
  if (r.params.e_norm) os << "  e=" << format_sig(*r.params.e_norm);
  os << "\nalgorithm " << to_string(r.algorithm) << "\n\n";

  if (r.index_table) {
    os << "full model indices\n";
    write_index_table(os, *r.index_table);
    os << '\n';
  }

  os << "I-screen survivors " << label(r.screen.survivors, r.names) << '\n';
  for (const auto& d : r.screen.dropped) {
    os << "  dropped " << name_of(r.names, d.column) << "  q2 " << format_sig(d.q_squared) << "  I "
       << format_sig(d.i_index) << '\n';
  }
  os << '\n';

  if (!r.pcc_classes.empty()) {
    os << "PCC classes\n";
    for (const auto& c : r.pcc_classes) {
      os << "  component " << component_label(c.component) << " (position " << c.component << ")  lambda "
         << format_sig(c.eigenvalue) << "  delta " << format_sig(c.contribution) << "  members {";
      for (std::size_t i = 0; i < c.members.size(); ++i) {
        os << (i ? ", " : "") << name_of(r.names, c.members[i].column) << " d=" << format_sig(c.members[i].identifier);
      }
      os << "}\n";
    }
    os << '\n';
  }

  os << "selection class (" << r.selection.entries.size() << " models)\n";
  Table t({"model", "J", "c_M", "d_M", "mean H", "flags"});
  for (const auto& e : r.selection.entries) {
    std::string flags;
    if (e.admissible) flags += "admissible ";
    if (e.maximal) flags += "maximal ";
    if (e.repaired) flags += "repaired ";
    if (!flags.empty()) flags.pop_back();
    t.add({label(e.model, r.names), std::to_string(e.model.column_size()), format_sig(e.icri.c_m),
           format_sig(e.icri.d_m), format_sig(e.report.mean_h), flags});
  }
  t.write(os);

  if (r.scores) {
    os << "\nscores by " << to_string(r.criterion) << '\n';
    Table s({"rank", "model", "rse", "cd", "adj cd", "aic", "bic", "rse*H/sqrtN"});
    for (const auto& rs : *r.scores) {
      const auto& sc = rs.score;
      s.add({std::to_string(rs.rank) + (rs.best ? "*" : ""), label(sc.model, r.names), format_sig(sc.rse),
             format_sig(sc.cd), format_sig(sc.adjusted_cd), format_sig(sc.aic), format_sig(sc.bic),
             format_sig(sc.mean_h_scaled)});
    }
    s.write(os);
    const auto& best = r.scores->front().score;
    if (best.exact_fit) os << "  note: degenerate exact fit (rss = 0)\n";
    os << "\nbest model coefficients\n";
    Table c({"term", "estimate", "SE", "PSE"});
    for (const auto& pc : best.per_coef) {
      c.add({pc.name, format_sig(pc.coefficient), format_sig(pc.se), format_sig(pc.pse)});
    }
    c.write(os);
  }

  if (!r.warnings.empty()) {
    os << "\nwarnings\n";
    for (const auto& w : r.warnings) os << "  " << w << '\n';
  }
  return os.str();
}

std::string render_text(const ModelIndexReport& r) {
  std::ostringstream os;
  write_index_table(os, r);
  return os.str();
}

std::string render_json(const ModelIndexReport& r) { return dump(index_json(r)); }

std::string render_text(const IScreenResult& s, const Dataset& ds) {
  std::ostringstream os;
  os << "survivors " << label(s.survivors, ds.names) << '\n';
  Table t({"dropped", "q2", "I"});
  for (const auto& d : s.dropped) {
    t.add({name_of(ds.names, d.column), format_sig(d.q_squared),
           std::isfinite(d.i_index) ? format_sig(d.i_index) : "inf (immobile)"});
  }
  if (!s.dropped.empty()) t.write(os);
  return os.str();
}

std::string render_json(const IScreenResult& s, const Dataset& ds) {
  json j = screen_json(s);
  json names = json::array();
  for (auto c : s.survivors.columns()) names.push_back(name_of(ds.names, c));
  j["survivor_names"] = names;
  return dump(j);
}

namespace {

std::string member_label(const std::vector<std::size_t>& members, const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) out += (i ? ", " : "") + name_of(names, members[i]);
  return out + "}";
}

json table_json(const FrequencyTable& t, const std::vector<std::string>& names) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json labels = json::array();
    for (auto m : r.members) labels.push_back(name_of(names, m));
    rows.push_back(json{{"members", r.members}, {"labels", labels}, {"count", r.count}});
  }
  return json{{"total", t.total}, {"rows", rows}};
}

}  // namespace

std::string render_text(const SimulationReport& r, const SimConfig& cfg) {
  const auto names = cfg.labels();
  std::ostringstream os;
  os << "trials " << cfg.trials << "  n " << cfg.n << "  a " << format_sig(cfg.a) << "  b " << format_sig(cfg.b)
     << "  seed " << cfg.seed << "\n\nfirst-component PCC class frequencies\n";
  Table t({"class", "count"});
  for (const auto& row : r.pcc.rows) t.add({member_label(row.members, names), std::to_string(row.count)});
  t.write(os);
  os << "\npairwise bound checks " << r.pair_checks << ", failures " << r.pair_failures
     << "; overlapping classes " << r.disjointness_failures << '\n';
  if (r.vr_models) {
    os << "\nVR model frequencies\n";
    Table v({"model", "count"});
    for (const auto& row : r.vr_models->rows) v.add({member_label(row.members, names), std::to_string(row.count)});
    v.write(os);
  }
  return os.str();
}

std::string render_json(const SimulationReport& r, const SimConfig& cfg) {
  const auto names = cfg.labels();
  json j{{"n", cfg.n}, {"trials", cfg.trials}, {"a", num(cfg.a)}, {"b", num(cfg.b)}, {"seed", cfg.seed},
         {"names", names}};
  j["pcc"] = table_json(r.pcc, names);
  j["pair_checks"] = r.pair_checks;
  j["pair_failures"] = r.pair_failures;
  j["disjointness_failures"] = r.disjointness_failures;
  j["vr_models"] = r.vr_models ? table_json(*r.vr_models, names) : json(nullptr);
  return dump(j);
}

}  // namespace eemx
