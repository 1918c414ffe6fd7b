#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "conquard/registry.hpp"

namespace conquard {

/// Exit codes: CI distinguishes a broken dashboard from broken quality.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitExecutionFailure = 2;
inline constexpr int kExitBlockingRed = 3;

struct RunOptions {
  std::filesystem::path config;
  std::filesystem::path project = ".";
  std::filesystem::path out = "conquard-report";
  std::optional<std::filesystem::path> history_file;
  std::string run_id;     // default: the run timestamp
  std::string timestamp;  // default: now (UTC); tests pin it
  bool dry_run = false;
  int verbosity = 0;
};

/// parse -> expand -> validate -> execute -> append history -> render report.
/// Never prompts; diagnostics go to `err`.
int cmd_run(const RunOptions& options, const Registry& registry, std::ostream& err);

/// Full static validation without execution.
int cmd_validate(const RunOptions& options, const Registry& registry, std::ostream& out,
                 std::ostream& err);

/// One line per kind: name, parameter schema, output ports; sorted by name.
std::string list_processors_text(const Registry& registry);

}  // namespace conquard
