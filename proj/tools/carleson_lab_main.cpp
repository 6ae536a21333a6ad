#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "carleson/runner.hpp"

namespace {

using carleson::Json;

// Effective check list: the subcommand's set, filtered by config.checks when
// the config declares one.  An empty intersection is reported, not skipped.
Json effective_checks(const Json& config, const std::vector<std::string>& wanted) {
  Json checks = Json::array();
  for (const std::string& name : wanted) {
    if (!config.contains("checks")) {
      checks.push_back(name);
      continue;
    }
    for (const auto& entry : config.at("checks")) {
      if (entry.is_string() && entry.get<std::string>() == name) {
        checks.push_back(name);
        break;
      }
    }
  }
  return checks;
}

int run_subcommand(const std::string& config_path, long long seed, int depth,
                   const std::string& out_dir,
                   const std::vector<std::string>& wanted) {
  Json config = Json::object();
  if (!config_path.empty()) {
    try {
      config = carleson::load_json_file(config_path);
    } catch (const std::exception& err) {
      std::cerr << "error: " << err.what() << "\n";
      return 2;
    }
  }
  if (!config.is_object()) {
    std::cerr << "error: " << config_path << ": top level must be an object\n";
    return 2;
  }
  const Json checks = effective_checks(config, wanted);
  if (checks.empty()) {
    std::cerr << "error: config.checks leaves nothing to run for this subcommand\n";
    return 2;
  }
  config["checks"] = checks;
  if (seed >= 0) config["seed"] = seed;
  if (depth > 0) config["knobs"]["depth"] = depth;
  const carleson::RunOutcome outcome = carleson::run(config, out_dir);
  std::cout << outcome.report.dump(2) << "\n";
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carleson box, ball, and embedding constants on the disc and "
               "conformal images of it"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int depth = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run config JSON path");
    cmd->add_option("--seed", seed, "override config seed");
    cmd->add_option("--depth", depth, "override dyadic scan depth");
    cmd->add_option("--out", out_dir, "directory for report.json and CSV side files");
  };

  CLI::App* check = app.add_subcommand("check", "geometric Carleson constants");
  CLI::App* embed = app.add_subcommand("embed", "embedding constants over a test family");
  CLI::App* stopping = app.add_subcommand("stopping", "derivative stopping-time generations");
  CLI::App* qns = app.add_subcommand("qns", "mean-value comparison constants");
  CLI::App* suite = app.add_subcommand("suite", "randomized box/ball equivalence suite");
  for (CLI::App* cmd : {check, embed, stopping, qns, suite}) add_common(cmd);

  CLI::App* report = app.add_subcommand("report", "render a report.json as text");
  report->add_option("--config", config_path, "report.json path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (report->parsed()) {
    try {
      std::cout << carleson::render_report(carleson::load_json_file(config_path));
    } catch (const std::exception& err) {
      std::cerr << "error: " << err.what() << "\n";
      return 2;
    }
    return 0;
  }
  if (check->parsed()) {
    return run_subcommand(config_path, seed, depth, out_dir,
                          {"square", "whitney", "boundary", "equivalence"});
  }
  if (embed->parsed()) {
    return run_subcommand(config_path, seed, depth, out_dir, {"embed"});
  }
  if (stopping->parsed()) {
    return run_subcommand(config_path, seed, depth, out_dir, {"stopping"});
  }
  if (qns->parsed()) {
    return run_subcommand(config_path, seed, depth, out_dir, {"qns"});
  }
  return run_subcommand(config_path, seed, depth, out_dir, {"suite"});
}
