// cochlea: resonances, modes and signal decomposition for graded resonator arrays.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure,
// 1 anything else (I/O, unexpected exceptions).

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cochlea/diagnostics.hpp"
#include "cochlea/errors.hpp"
#include "commands.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct Options {
  std::string config;
  std::string out = "out";
  int truncation = 0;
  int threads = 0;
  bool verbose = false;
};

int run(const std::string& command, const Options& opt) {
  using namespace cochlea;
  app::RunContext ctx;
  ctx.command = command;
  ctx.out = opt.out;
  ctx.threads = opt.threads;
  ctx.verbose = opt.verbose;
  nlohmann::json raw = nlohmann::json::object();
  if (!opt.config.empty()) {
    std::ifstream in(opt.config, std::ios::binary);
    if (!in) throw ConfigError("--config", "cannot open '" + opt.config + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    ctx.config_path = opt.config;
    ctx.config_bytes = ss.str();
    try {
      raw = nlohmann::json::parse(ctx.config_bytes);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
  }
  if (opt.truncation != 0) {
    if (opt.truncation < 1) throw ConfigError("--truncation", "must be a positive integer");
    raw["truncation"] = opt.truncation;
  }
  ctx.config = app::parse_config(raw);

  if (!opt.verbose) set_warning_sink([](const std::string&) {});
  const auto files = app::run_command(ctx);
  if (opt.verbose) {
    for (const auto& f : files) std::fprintf(stderr, "wrote %s\n", (ctx.out / f).string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Subwavelength resonances and modal analysis of graded resonator arrays"};
  cli.require_subcommand(1);
  cli.fallthrough();
  Options opt;
  cli.add_option("--config", opt.config, "JSON run configuration")->check(CLI::ExistingFile);
  cli.add_option("--out", opt.out, "output directory")->capture_default_str();
  cli.add_option("--truncation", opt.truncation, "maximum Fourier order M (overrides config)");
  cli.add_option("--threads", opt.threads, "worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  cli.add_flag("-v,--verbose", opt.verbose, "progress and warnings on stderr");

  const std::map<std::string, std::string> help = {
      {"resonances", "resonant frequencies (resonances.csv, resonances.json)"},
      {"modes", "normalised eigenmodes on a line and a grid, Gram matrix"},
      {"sweep", "L2 response norm of forced solves over a frequency grid"},
      {"decompose", "modal weights alpha_n(omega) and alpha_n(omega_n) per carrier"},
      {"wave", "travelling wave p(x_1, 0, t) from modal synthesis"},
      {"tonotopy", "peak position of each mode and the exponential map fit"},
      {"params", "membrane stiffness and contrast estimate from cochlear data"}};
  for (const auto& name : cochlea::app::command_names()) cli.add_subcommand(name, help.at(name));

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    return run(cli.get_subcommands().front()->get_name(), opt);
  } catch (const cochlea::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const cochlea::Error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericalError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
