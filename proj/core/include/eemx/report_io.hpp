#pragma once

// Text and JSON renderings. Text uses 4 significant digits; JSON keeps full
// round-trip precision and writes non-finite numbers as "inf", "-inf", "nan".

#include <string>
#include <string_view>

#include "eemx/pipeline.hpp"
#include "eemx/simulate.hpp"

namespace eemx {

std::string format_sig(double value, int digits = 4);

std::string render_text(const RunReport& report);
std::string render_json(const RunReport& report);
/// Inverse of render_json (ParseError on malformed input).
RunReport parse_run_report(std::string_view json);

std::string render_text(const ModelIndexReport& report);
std::string render_json(const ModelIndexReport& report);

std::string render_text(const IScreenResult& screen, const Dataset& ds);
std::string render_json(const IScreenResult& screen, const Dataset& ds);

std::string render_text(const SimulationReport& report, const SimConfig& config);
std::string render_json(const SimulationReport& report, const SimConfig& config);

}  // namespace eemx
