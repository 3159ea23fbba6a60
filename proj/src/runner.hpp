#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "problem.hpp"

namespace canonsym {

struct RunOptions {
  std::optional<std::uint64_t> seed; // overrides the problem file's seed
  std::optional<double> tolerance;   // overrides the command's default tolerance
  std::string csv_dir;               // non-empty: write drift series per candidate
};

struct RunReport {
  std::string command;
  bool passed = false;
  int exit_code = 1; // 0: all checks passed, 1: at least one failed
  std::string human;
  std::string json; // deterministic serialization
};

const std::vector<std::string>& command_names();
bool is_command(std::string_view name);

/// Runs one command against a problem. Input-level defects (schema, parse,
/// missing sections) raise; check failures are reported with exit code 1.
RunReport run_command(const ProblemFile& problem, const std::string& command,
                      const RunOptions& opts = {});

/// The shipped example set; each entry also declares which commands it is
/// meant to demonstrate.
struct GalleryEntry {
  std::string name;
  ProblemFile problem;
  std::vector<std::string> commands;
};
const std::vector<GalleryEntry>& gallery();

/// Runs a command (or, without one, every applicable command) across the
/// gallery and aggregates a single report.
RunReport run_gallery(const std::optional<std::string>& command, const RunOptions& opts = {});

} // namespace canonsym
