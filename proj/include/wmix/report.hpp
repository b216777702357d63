#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace wmix {

using Json = nlohmann::ordered_json;

/// Floating values serialize as decimal strings with 17 significant digits
/// so reports round-trip byte-identically; integral counts stay native.
std::string format_sig17(double v);
Json jnum(double v);
Json jnum_vec(const std::vector<double>& v);

/// Series CSV: header row, LF line endings.
struct CsvSeries {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_file_atomic(const std::string& path, const std::string& content);
std::string csv_to_string(const CsvSeries& csv);

}  // namespace wmix
