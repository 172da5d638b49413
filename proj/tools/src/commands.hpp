#pragma once

// Subcommand implementations. Each command first resolves and validates all
// of its parameters (throwing ConfigError), then runs and returns records;
// the caller writes files only after a successful resolution, so malformed
// configurations never leave partial output behind.

#include "config.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace treelab::cli {

using Record = nlohmann::ordered_json;

struct RunOptions {
  std::optional<std::uint64_t> seed;  ///< overrides the config seed
  unsigned jobs = 1;
};

struct CommandOutput {
  std::vector<Record> records;
  std::vector<std::string> columns;  ///< summary CSV columns, taken from records
  bool ok = true;
};

/// A resolved command ready to run.
using Runner = std::function<CommandOutput()>;

/// Throws ConfigError on an unknown command or invalid parameters.
Runner resolve_command(const std::string& command, const Config& config, const RunOptions& options);

const std::vector<std::string>& command_names();

/// Replays a single suite case from its record id
/// "<suite>:q=<q>:depth=<d>:seed=<s>:case=<i>". Throws ConfigError when the
/// id is not a case id.
Record replay_case(const std::string& id);
bool is_case_id(const std::string& id);

std::string csv_escape(const std::string& s);
std::string csv_cell(const Record& value);

} // namespace treelab::cli
