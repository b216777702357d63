#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wmix/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"wmix: finite-horizon diagnostics for weak mixing of vector sequences"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "wmix_out";
  std::int64_t seed = -1, horizon = -1, exact_cutoff = -1;
  double tolerance = -1.0;
  app.add_option("--config", config_path, "config JSON file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "seed override");
  app.add_option("--horizon", horizon, "horizon override");
  app.add_option("--tolerance", tolerance, "tolerance override");
  app.add_option("--exact-cutoff", exact_cutoff, "exact enumeration cutoff override");

  const std::vector<std::string> commands = {
      "density", "banach",    "mixing", "uniform",    "windowed",
      "subseq",  "witness",   "hull",   "shiftbound", "structure",
      "translates", "ergodic", "threshold", "reproduce"};
  std::string reproduce_example;
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    if (name == "reproduce")
      sub->add_option("example", reproduce_example,
                      "example_3_1 | example_3_2 | example_3_3 | example_6_2 | orbit_demo");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  wmix::Json config = wmix::Json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot open config file: " << config_path << "\n";
      return 1;
    }
    try {
      in >> config;
    } catch (const std::exception& e) {
      std::cerr << "config parse error: " << e.what() << "\n";
      return 1;
    }
  }
  if (seed >= 0) config["seed"] = seed;
  if (horizon >= 0) config["horizon"] = horizon;
  if (tolerance >= 0) config["tolerance"] = tolerance;
  if (exact_cutoff >= 0) config["exact_cutoff"] = exact_cutoff;
  if (!config.contains("seed")) config["seed"] = 0;
  if (command == "reproduce" && !reproduce_example.empty())
    config["example"] = reproduce_example;

  const auto start = std::chrono::steady_clock::now();
  const auto out = wmix::cli::run_command(command, config);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  try {
    wmix::cli::write_outputs(out, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 1;
  }
  // Wall time goes to stderr only; reports stay byte-reproducible.
  std::cerr << command << ": exit " << out.exit_code << ", " << ms << " ms, report at "
            << out_dir << "/report.json\n";
  std::cout << out.report;
  return out.exit_code;
}
