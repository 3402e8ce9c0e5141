#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eemx/numerics.hpp"

namespace eemx {

inline constexpr std::string_view kInterceptName = "_const";

/// Named design with the intercept at column 0, plus an optional response.
struct Dataset {
  std::vector<std::string> names;
  Matrix design;
  std::optional<Vector> response;
  std::string response_name;
  std::string id;  // content hash; equal data gives equal ids

  std::size_t rows() const { return static_cast<std::size_t>(design.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(design.cols()); }
  std::size_t column_index(std::string_view name) const;  // UnknownColumn
};

/// Builds a dataset from raw regressors; the intercept is prepended.
Dataset make_dataset(const Matrix& regressors, std::vector<std::string> names,
                     std::optional<Vector> response = std::nullopt,
                     std::string response_name = {});

/// Parses comma-separated text with a header row. `source` only labels errors.
Dataset parse_csv(std::string_view text, const std::optional<std::string>& response_column,
                  std::string_view source = "<memory>");

Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<std::string>& response_column = std::nullopt);

/// Writes a header plus rows with round-trip precision.
void write_csv(std::ostream& out, const std::vector<std::string>& names, const Matrix& values);

/// 64-bit FNV-1a over names, response name and the raw bytes of every value.
std::string content_id(const std::vector<std::string>& names, const Matrix& design,
                       const std::optional<Vector>& response, std::string_view response_name);

/// Looks for `file` under $EEMX_DATA_DIR first, then each fallback directory.
std::optional<std::filesystem::path> find_data_file(
    std::string_view file, const std::vector<std::filesystem::path>& fallbacks = {});

}  // namespace eemx
