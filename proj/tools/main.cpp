#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "runner.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw chainflux::cli::ConfigError("config error: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "chainflux: explicit conservation-law schemes as Markov chain "
      "transition tables"};
  app.require_subcommand(0, 1);

  std::string config_path = "-";
  bool strict = false;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string output_path;
  bool output_given = false;

  const char* commands[] = {"solve",       "check", "mc",       "limiters",
                            "convergence", "gds",   "fnn-approx"};
  for (const char* name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("config", config_path,
                    "JSON config file, or - for standard input");
    sub->add_flag("--strict", strict, "fail on non-probabilistic schemes");
    sub->add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--output", output_path, "override the output path")
        ->each([&](const std::string&) { output_given = true; });
  }
  app.add_option("config", config_path,
                 "JSON config file, or - for standard input");
  app.add_flag("--strict", strict, "fail on non-probabilistic schemes");
  app.add_option("--seed", seed, "override the config seed")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--output", output_path, "override the output path")
      ->each([&](const std::string&) { output_given = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    chainflux::cli::RunOptions opt;
    opt.config = chainflux::cli::load_config(read_input(config_path));

    const auto subs = app.get_subcommands();
    if (!subs.empty()) {
      opt.command = subs.front()->get_name();
      if (opt.config.contains("command") &&
          opt.config.at("command").get<std::string>() != opt.command)
        throw chainflux::cli::ConfigError(
            "config error: $.command disagrees with the subcommand");
    } else if (opt.config.contains("command")) {
      opt.command = opt.config.at("command").get<std::string>();
    } else {
      throw chainflux::cli::ConfigError(
          "config error: no subcommand given and $.command missing");
    }

    opt.strict = strict || opt.config.value("strict", false);
    if (seed_given) opt.seed_override = seed;
    if (output_given) opt.output_override = output_path;
    return chainflux::cli::run(opt);
  } catch (const chainflux::cli::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
