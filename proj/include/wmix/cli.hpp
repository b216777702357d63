#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmix/report.hpp"

namespace wmix::cli {

struct RunOutput {
  int exit_code = 0;           // 0 ok, 1 input error, 2 verdict failed
  std::string report;          // the JSON report text
  std::vector<CsvSeries> csv;  // per-n series, when applicable
};

/// Executes one command against a resolved config object.  The report embeds
/// the config verbatim, so identical config (and seed) reproduces identical
/// bytes.
RunOutput run_command(const std::string& command, const Json& config);

/// Writes report.json and the CSV series into `out_dir`.
void write_outputs(const RunOutput& out, const std::string& out_dir);

}  // namespace wmix::cli
