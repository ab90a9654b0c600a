#include "commring_cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "commring/error.hpp"

namespace commring::cli {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::ConfigInvalid, "cannot write " + path);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Commuting matrix differential operators from Baker-Akhiezer modules"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  int jobs = 1;
  app.add_option("--config", config_path, "Experiment config (JSON)");
  app.add_option("--out", out_dir, "Output directory (overrides the config)");
  app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--tol", tol, "Replace every acceptance tolerance")->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  for (const auto& [name, desc] : command_descriptions()) app.add_subcommand(name, desc);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  Report report(name);
  Context ctx;
  try {
    ctx.cfg = config_path.empty() ? parse_config("{}") : load_config(config_path);
    if (seed) ctx.cfg.seed = *seed;
    if (tol) {
      for (const auto& [key, value] : default_tolerances()) {
        if (key.rfind("halving", 0) != 0) ctx.cfg.tolerances[key] = *tol;
      }
    }
    ctx.out_dir = out_dir.empty() ? ctx.cfg.output : out_dir;
    ctx.jobs = jobs;
    std::filesystem::create_directories(ctx.out_dir);
    validate(ctx.cfg);
    write_text(ctx.path("config_used.json"), dump_config(ctx.cfg));
    commands().at(name)(ctx, report);
  } catch (const Error& e) {
    report.set_error(e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    report.set_error(std::string("ConfigInvalid: ") + e.what());
  }
  std::cout << report.text();
  if (!ctx.out_dir.empty()) {
    try {
      write_text(ctx.path("summary.json"), report.summary());
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
    }
  }
  if (report.has_error()) return kExitError;
  return report.pass() ? kExitPass : kExitToleranceFailure;
}

}  // namespace commring::cli
