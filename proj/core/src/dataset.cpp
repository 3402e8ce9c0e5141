#include "eemx/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "eemx/errors.hpp"

namespace eemx {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

std::string unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::string where(std::string_view source, std::size_t line, std::size_t col) {
  std::ostringstream os;
  os << source << ":" << line << ": column " << col;
  return os.str();
}

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void text(std::string_view s) {
    bytes(s.data(), s.size());
    const unsigned char sep = 0x1f;
    bytes(&sep, 1);
  }
  void number(double v) {
    if (v == 0.0) v = 0.0;  // fold -0 into +0
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      const auto b = static_cast<unsigned char>(bits >> (8 * i));
      bytes(&b, 1);
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::size_t Dataset::column_index(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) fail(ErrorCode::UnknownColumn, "no column named '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names.begin());
}

std::string content_id(const std::vector<std::string>& names, const Matrix& design,
                       const std::optional<Vector>& response, std::string_view response_name) {
  Fnv1a h;
  for (const auto& n : names) h.text(n);
  h.text(response_name);
  for (Eigen::Index r = 0; r < design.rows(); ++r) {
    for (Eigen::Index c = 0; c < design.cols(); ++c) h.number(design(r, c));
  }
  if (response) {
    for (Eigen::Index r = 0; r < response->size(); ++r) h.number((*response)(r));
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h.value();
  return os.str();
}

Dataset make_dataset(const Matrix& regressors, std::vector<std::string> names,
                     std::optional<Vector> response, std::string response_name) {
  if (names.size() != static_cast<std::size_t>(regressors.cols())) {
    fail(ErrorCode::DimensionMismatch, "one name per regressor column required");
  }
  if (response && response->size() != regressors.rows()) {
    fail(ErrorCode::DimensionMismatch, "response length differs from row count");
  }
  std::set<std::string> seen{std::string(kInterceptName)};
  for (const auto& n : names) {
    if (!seen.insert(n).second) fail(ErrorCode::DuplicateHeader, "duplicate column name '" + n + "'");
  }
  if (!regressors.allFinite() || (response && !response->allFinite())) {
    fail(ErrorCode::NonNumericCell, "non-finite value in data");
  }

  Dataset ds;
  ds.design.resize(regressors.rows(), regressors.cols() + 1);
  ds.design.col(0).setOnes();
  ds.design.rightCols(regressors.cols()) = regressors;
  ds.names.reserve(names.size() + 1);
  ds.names.emplace_back(kInterceptName);
  for (auto& n : names) ds.names.push_back(std::move(n));
  ds.response = std::move(response);
  ds.response_name = std::move(response_name);
  ds.id = content_id(ds.names, ds.design, ds.response, ds.response_name);
  return ds;
}

Dataset parse_csv(std::string_view text, const std::optional<std::string>& response_column,
                  std::string_view source) {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;

    const auto cells = split_commas(line);
    if (header.empty()) {
      std::set<std::string> seen;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        std::string name = unquote(cells[c]);
        if (name.empty()) fail(ErrorCode::ParseError, where(source, line_no, c + 1) + ": empty header");
        if (!seen.insert(name).second) {
          fail(ErrorCode::DuplicateHeader, where(source, line_no, c + 1) + ": duplicate header '" + name + "'");
        }
        header.push_back(std::move(name));
      }
      continue;
    }
    if (cells.size() != header.size()) {
      fail(ErrorCode::RaggedRows, where(source, line_no, cells.size()) + ": expected " +
                                      std::to_string(header.size()) + " cells, found " +
                                      std::to_string(cells.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::string_view cell = cells[c];
      if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        fail(ErrorCode::NonNumericCell, where(source, line_no, c + 1) + " ('" + header[c] +
                                            "'): cannot read '" + std::string(cells[c]) + "' as a number");
      }
      row[c] = v;
    }
    rows.push_back(std::move(row));
  }
  if (header.empty()) fail(ErrorCode::ParseError, std::string(source) + ": no header row");
  if (rows.empty()) fail(ErrorCode::ParseError, std::string(source) + ": no data rows");

  std::optional<std::size_t> response_at;
  if (response_column) {
    const auto it = std::find(header.begin(), header.end(), *response_column);
    if (it == header.end()) {
      fail(ErrorCode::UnknownColumn, std::string(source) + ": no column named '" + *response_column + "'");
    }
    response_at = static_cast<std::size_t>(it - header.begin());
  }

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto k = static_cast<Eigen::Index>(header.size() - (response_at ? 1 : 0));
  Matrix regressors(n, k);
  std::optional<Vector> response;
  if (response_at) response = Vector(n);
  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != response_at) names.push_back(header[c]);
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    Eigen::Index out = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const double v = rows[static_cast<std::size_t>(r)][c];
      if (response_at && c == *response_at) {
        (*response)(r) = v;
      } else {
        regressors(r, out++) = v;
      }
    }
  }
  return make_dataset(regressors, std::move(names), std::move(response),
                      response_column ? *response_column : std::string{});
}

Dataset load_csv(const std::filesystem::path& path, const std::optional<std::string>& response_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), response_column, path.string());
}

void write_csv(std::ostream& out, const std::vector<std::string>& names, const Matrix& values) {
  if (names.size() != static_cast<std::size_t>(values.cols())) {
    fail(ErrorCode::DimensionMismatch, "one name per column required");
  }
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  out << '\n';
  char buf[64];
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const auto res = std::to_chars(buf, buf + sizeof buf, values(r, c));
      if (c) out << ',';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

std::optional<std::filesystem::path> find_data_file(std::string_view file,
                                                    const std::vector<std::filesystem::path>& fallbacks) {
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv("EEMX_DATA_DIR"); env && *env) dirs.emplace_back(env);
  dirs.insert(dirs.end(), fallbacks.begin(), fallbacks.end());
  for (const auto& d : dirs) {
    std::error_code ec;
    const auto candidate = d / std::filesystem::path(file);
    if (std::filesystem::is_regular_file(candidate, ec)) return candidate;
  }
  return std::nullopt;
}

}  // namespace eemx
