#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace chainflux::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string command;
  nlohmann::json config;
  bool strict = false;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> output_override;
};

// Raw config text -> parsed JSON, with a line-numbered message on parse
// failure and schema validation against the embedded run-config schema.
nlohmann::json load_config(const std::string& text);

// Dispatches one command. Returns the process exit code: 0 on success,
// 3 on a stability error in strict mode (the report is printed).
int run(const RunOptions& opt);

}  // namespace chainflux::cli
