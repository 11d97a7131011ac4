#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pml {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

// One CLI invocation: a command, its parameter object (strict per-command
// schema), and where/how to write the artifact. Assembled from flags and/or
// a JSON config file; flags override file values.
struct RunConfig {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::string output;  // empty = standard output
  std::string format;  // "csv" | "json" | "" (command default)
  std::optional<std::uint64_t> seed;
  std::string plot;  // optional plot-ready CSV path
};

// Validates the config (unknown or ill-typed fields are named), dispatches
// to the module behind the command, and writes the artifact. Diagnostics go
// to diag. Returns 0 on success, 2 on validation errors, 3 on runtime
// errors.
int execute(const RunConfig& config, std::ostream& out, std::ostream& diag);

// Full flag path: parses argv-style args (without the program name), loads
// --config when given, merges, and runs execute().
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag);

}  // namespace pml
