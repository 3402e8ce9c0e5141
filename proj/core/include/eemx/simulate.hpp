#pragma once

// Monte Carlo study of which variables end up in the first component's PCC
// class when the design rows are drawn from N(0, Phi).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eemx/model_space.hpp"

namespace eemx {

struct SimConfig {
  Matrix correlation;  // Phi: symmetric, unit diagonal, positive definite
  std::size_t n = 50;
  std::size_t trials = 1000;
  double a = 0.9;
  double b = 0.4;
  std::uint64_t seed = 0;
  std::vector<std::string> names;  // variable labels; default v1..vp
  bool full_vr = false;            // also run the whole VR algorithm per trial
  double c_q = 0.9;                // used only with full_vr
  double d_R = 0.9;

  void validate() const;
  std::vector<std::string> labels() const;
};

/// n x p sample whose rows are L g with L L' = Phi and g iid N(0, 1).
/// Equal (seed, trial) gives a bit-identical matrix.
Matrix generate_mvn(const SimConfig& config, std::uint64_t trial);
Matrix generate_mvn(const Matrix& chol_lower, std::size_t n, std::uint64_t seed, std::uint64_t trial);

struct FrequencyRow {
  std::vector<std::size_t> members;  // variable positions, ascending
  std::size_t count = 0;
  bool operator==(const FrequencyRow&) const = default;
};

struct FrequencyTable {
  std::vector<FrequencyRow> rows;  // descending count, then lexicographic
  std::size_t total = 0;

  std::size_t count_of(const std::vector<std::size_t>& members) const;
  bool operator==(const FrequencyTable&) const = default;
};

struct SimulationReport {
  FrequencyTable pcc;  // class of the first component; empty when its contribution is below b
  std::size_t pair_checks = 0;
  std::size_t pair_failures = 0;
  std::size_t disjointness_failures = 0;  // trials whose classes overlapped
  std::optional<FrequencyTable> vr_models;  // member sets are variable positions
  bool operator==(const SimulationReport&) const = default;
};

SimulationReport pcc_frequency_study(const SimConfig& config);

}  // namespace eemx
