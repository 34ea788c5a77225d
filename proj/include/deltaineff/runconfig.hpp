#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace deltaineff::cli {

enum class OutputFormat { csv, json };

/// One run request: a command, its named parameters (kept as strings until
/// validated per command), an output target and a worker count. Configs come
/// from a flat `key = value` file, from a previously written run manifest
/// (JSON), from command-line flags, or any merge of those (flags win).
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::filesystem::path out;  // empty: <command>.<format> in the working dir
  OutputFormat format = OutputFormat::csv;
  unsigned threads = 1;

  std::filesystem::path resolved_out() const;
};

/// Parse a config file: flat `key = value` lines with `#` comments, or a run
/// manifest (detected by a leading '{').
RunConfig load_config(const std::filesystem::path& path);

/// Overlay: non-empty fields and params of `over` replace those of `base`.
RunConfig merge(RunConfig base, const RunConfig& over);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Artifact {
  std::string name_suffix;  // "" for the main table, e.g. "inset" for extras
  Table table;
};

struct RunOutput {
  std::vector<std::filesystem::path> written;  // tables + manifest
};

/// Validate the config against the command's parameter schema (unknown keys
/// rejected), compute the requested table(s), write them in the requested
/// format plus a JSON run manifest next to the main output. Throws
/// ConfigError / DomainRejection / NumericalError; see exit_code_for.
RunOutput run(const RunConfig& config);

/// Compute without touching the filesystem (used by tests and bindings).
std::vector<Artifact> execute(const RunConfig& config);

/// CLI exit code for a failure: 2 config, 3 domain rejection, 4 numerical.
int exit_code_for(const std::exception& error);

/// Full-precision (17 significant digits) locale-independent formatting used
/// for every CSV cell.
std::string format_full(double value);

}  // namespace deltaineff::cli
