#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace cochlea::app {

struct RunContext {
  RunConfig config;
  std::filesystem::path out;
  std::string command;
  std::string config_path;   ///< empty when defaults were used
  std::string config_bytes;  ///< raw file contents, for the manifest checksum
  int threads = 0;
  bool verbose = false;
};

const std::vector<std::string>& command_names();

/// Runs one subcommand, writes its files, the config echo and manifest.json.
/// Returns the files written, relative to ctx.out.
std::vector<std::string> run_command(const RunContext& ctx);

}  // namespace cochlea::app
