#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypspec/domains.hpp"
#include "hypspec/experiments.hpp"

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Sections tag the experiment; keys are flat key = value pairs.
std::vector<hypspec::ExperimentConfig> parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);

  const auto known = hypspec::list_experiments();
  std::vector<hypspec::ExperimentConfig> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    std::ostringstream at;
    at << path << ":" << lineno << ": ";

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(at.str() + "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw ConfigError(at.str() + "unknown experiment '" + name + "'");
      hypspec::ExperimentConfig cfg;
      cfg.experiment = name;
      out.push_back(cfg);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(at.str() + "expected key = value");
    if (out.empty())
      throw ConfigError(at.str() + "key outside an experiment section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (!out.back().set(key, value))
        throw ConfigError(at.str() + "unknown key '" + key + "'");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(at.str() + "key '" + key + "': " + e.what());
    }
  }
  if (out.empty()) throw ConfigError(path + ": no experiment sections");
  return out;
}

void print_result(const hypspec::ExperimentResult& res) {
  std::printf("[%s] %s\n", res.experiment.c_str(),
              res.pass ? "PASS" : "FAIL");
  for (const auto& r : res.reports) {
    if (!r.applicable) {
      std::printf("  %-32s n/a\n", r.name.c_str());
      continue;
    }
    std::printf("  %-32s %s  lhs=%.6g rhs=%.6g margin=%.3g\n", r.name.c_str(),
                r.pass ? "pass" : "FAIL", r.lhs, r.rhs, r.margin);
  }
  for (const auto& w : res.warnings)
    std::printf("  warning: %s\n", w.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral bound experiments for weighted elliptic operators"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int grid_override = 0;
  bool refine = false, strict = false;

  auto* run = app.add_subcommand("run", "run experiments from a config file");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--grid", grid_override, "override grid sizes");
  run->add_flag("--refine", refine, "add grid-refined eigenvalue tables");
  run->add_option("--out", out_dir, "directory for report files");
  run->add_flag("--strict", strict, "treat warnings as failures");

  std::string validate_path;
  auto* val = app.add_subcommand("validate-config", "parse a config and exit");
  val->add_option("config", validate_path, "config file")->required();

  auto* list = app.add_subcommand("list-experiments", "list experiment names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    for (const auto& name : hypspec::list_experiments())
      std::printf("%s\n", name.c_str());
    return 0;
  }

  if (val->parsed()) {
    try {
      const auto configs = parse_config(validate_path);
      std::printf("ok: %zu experiment(s)\n", configs.size());
      return 0;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 2;
    }
  }

  std::vector<hypspec::ExperimentConfig> configs;
  try {
    configs = parse_config(config_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  bool all_pass = true;
  for (size_t i = 0; i < configs.size(); ++i) {
    auto cfg = configs[i];
    if (grid_override > 0) {
      cfg.grid = grid_override;
      cfg.grid2d = grid_override;
    }
    cfg.refine = cfg.refine || refine;
    cfg.strict = cfg.strict || strict;

    hypspec::ExperimentResult res;
    try {
      res = hypspec::run_experiment(cfg);
    } catch (const hypspec::ConstraintViolation& e) {
      std::fprintf(stderr, "error: [%s] %s\n", cfg.experiment.c_str(),
                   e.what());
      return 2;
    } catch (const std::invalid_argument& e) {
      std::fprintf(stderr, "error: [%s] %s\n", cfg.experiment.c_str(),
                   e.what());
      return 2;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "solver error: [%s] %s\n", cfg.experiment.c_str(),
                   e.what());
      return 3;
    }

    print_result(res);
    if (!res.pass) all_pass = false;

    if (!out_dir.empty()) {
      std::filesystem::path dir(out_dir);
      if (configs.size() > 1)
        dir /= res.experiment + "-" + std::to_string(i + 1);
      else
        dir /= res.experiment;
      try {
        hypspec::write_outputs(res, dir.string());
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: writing reports: %s\n", e.what());
        return 2;
      }
    }
  }
  return all_pass ? 0 : 1;
}
