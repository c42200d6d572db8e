#include "shrinkcast/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "shrinkcast/error.hpp"

namespace shrinkcast {

namespace {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    auto cell = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) cell.remove_suffix(1);
    cells.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s, std::string_view context) {
  double v = 0.0;
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("non-numeric value '" + std::string(s) + "' at " + std::string(context));
  }
  return v;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == name) return j;
  }
  throw DataError("missing CSV column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text, std::string_view source) {
  CsvTable t;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool have_header = false;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw DataError(std::string(source) + " line " + std::to_string(line_no) + ": expected " +
                      std::to_string(t.header.size()) + " cells, got " + std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  if (!have_header) throw DataError(std::string(source) + ": missing header row");
  return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str(), path.string());
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j) out += ',';
      out += cells[j];
    }
    out += '\n';
  };
  emit(table.header);
  for (const auto& r : table.rows) emit(r);
  return out;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DataError("cannot rename '" + tmp.string() + "': " + ec.message());
}

TimeSeriesFrame parse_frame_csv(std::string_view text, std::string_view source) {
  CsvTable t = parse_csv(text, source);
  if (t.header.empty() || t.header.front() != "date") {
    throw DataError(std::string(source) + ": first column must be 'date'");
  }
  if (t.header.size() < 2) throw DataError(std::string(source) + ": no series columns");
  std::vector<std::string> names(t.header.begin() + 1, t.header.end());
  std::vector<YearMonth> dates;
  Eigen::MatrixXd values(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(names.size()));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    dates.push_back(YearMonth::parse(r[0]));
    for (std::size_t j = 1; j < r.size(); ++j) {
      const std::string where = std::string(source) + " row " + std::to_string(i + 2) + ", column '" +
                                t.header[j] + "'";
      if (r[j].empty()) throw DataError("missing value at " + where);
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) = parse_double(r[j], where);
    }
  }
  return TimeSeriesFrame(std::move(dates), std::move(names), std::move(values));
}

TimeSeriesFrame read_frame_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open data file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_frame_csv(ss.str(), path.string());
}

std::string frame_to_csv(const TimeSeriesFrame& frame) {
  CsvTable t;
  t.header.push_back("date");
  for (const auto& n : frame.names()) t.header.push_back(n);
  for (std::size_t i = 0; i < frame.rows(); ++i) {
    std::vector<std::string> row{frame.dates()[i].str()};
    for (std::size_t j = 0; j < frame.cols(); ++j) {
      row.push_back(format_double(frame.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    }
    t.rows.push_back(std::move(row));
  }
  return to_csv(t);
}

}  // namespace shrinkcast
