#include "wmix/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wmix {

std::string format_sig17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json jnum(double v) { return Json(format_sig17(v)); }

Json jnum_vec(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(jnum(x));
  return a;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

std::string csv_to_string(const CsvSeries& csv) {
  std::string s;
  for (std::size_t i = 0; i < csv.header.size(); ++i) {
    if (i) s += ',';
    s += csv.header[i];
  }
  s += '\n';
  for (const auto& row : csv.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += row[i];
    }
    s += '\n';
  }
  return s;
}

}  // namespace wmix
