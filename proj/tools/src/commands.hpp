#pragma once

#include <functional>
#include <map>
#include <string>

#include "commring_cli/config.hpp"
#include "commring_cli/report.hpp"

namespace commring::cli {

struct Context {
  ExperimentConfig cfg;
  std::string out_dir;
  int jobs = 1;

  std::string path(const std::string& file) const;
};

using Command = std::function<void(const Context&, Report&)>;

/// Subcommand name to implementation, in presentation order.
const std::vector<std::pair<std::string, std::string>>& command_descriptions();
const std::map<std::string, Command>& commands();

}  // namespace commring::cli
