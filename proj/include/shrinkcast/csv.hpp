#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "shrinkcast/data.hpp"

namespace shrinkcast {

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);
double parse_double(std::string_view s, std::string_view context);

// Header plus string cells; no quoting (the formats written here never need it).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text, std::string_view source);
std::string to_csv(const CsvTable& table);

// Writes to a sibling temp file, then renames over the target.
void atomic_write(const std::filesystem::path& path, std::string_view content);

// First column `date` (YYYY-MM), remaining numeric series.
TimeSeriesFrame read_frame_csv(const std::filesystem::path& path);
TimeSeriesFrame parse_frame_csv(std::string_view text, std::string_view source);
std::string frame_to_csv(const TimeSeriesFrame& frame);

}  // namespace shrinkcast
