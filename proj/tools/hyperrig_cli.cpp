// Command-line driver. Builds a flat config from --config and the flags
// (flags win) and hands it to hr_run().

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hyperrig/hyperrig.h"

int main(int argc, char** argv) {
  CLI::App app{"Curvature-pinching rigidity checks for hypersurfaces of spheres"};
  app.set_version_flag("--version", std::string(hr_version()));

  std::string command;
  app.add_option("command", command,
                 "analyze | gallery | ball | degree | beltrami-study | quotient-check | sharpness"
                 " (or `command` in the config file)");

  std::string config_file;
  app.add_option("--config", config_file, "flat key = value config file");

  // Flag name -> config key.
  const std::vector<std::pair<std::string, std::string>> mapped = {
      {"--chart", "chart"},         {"--theorem", "theorem"},   {"--resolution", "resolution"},
      {"--p0", "p0"},               {"--group-file", "group_file"}, {"--group", "group"},
      {"--epsilon", "epsilon"},     {"--t-list", "t_list"},     {"--r-grid", "r_grid"},
      {"--out", "out"},             {"--csv", "csv"},           {"--seed", "seed"},
      {"--objective", "objective"}, {"--threads", "threads"},
  };
  std::vector<std::string> values(mapped.size());
  std::vector<CLI::Option*> opts;
  for (std::size_t i = 0; i < mapped.size(); ++i)
    opts.push_back(app.add_option(mapped[i].first, values[i], "sets " + mapped[i].second));
  bool oracle = false;
  auto* oracle_flag = app.add_flag("--oracle", oracle, "cross-check balls against the brute-force oracle");
  std::vector<std::string> sets;
  app.add_option("--set", sets, "extra key=value config entries (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version are successful exits; anything else is a usage error.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  std::ostringstream cfg;
  if (!config_file.empty()) {
    std::ifstream f(config_file);
    if (!f) {
      std::cerr << "cannot read config file '" << config_file << "'\n";
      return 64;
    }
    cfg << f.rdbuf() << "\n";
  }
  if (!command.empty()) cfg << "command = " << command << "\n";
  for (std::size_t i = 0; i < mapped.size(); ++i)
    if (opts[i]->count() > 0) cfg << mapped[i].second << " = " << values[i] << "\n";
  if (oracle_flag->count() > 0) cfg << "oracle = " << (oracle ? "true" : "false") << "\n";
  for (const auto& s : sets) cfg << s << "\n";

  char* report = nullptr;
  int exit_code = 1;
  if (hr_run(cfg.str().c_str(), &report, &exit_code) != HR_OK) {
    std::cerr << hr_last_error() << "\n";
    return 1;
  }
  // The report goes to stdout unless a file was requested on the command line.
  bool to_stdout = true;
  for (std::size_t i = 0; i < mapped.size(); ++i)
    if (mapped[i].second == "out" && opts[i]->count() > 0) to_stdout = false;
  if (to_stdout) std::cout << report;
  hr_string_free(report);
  return exit_code;
}
