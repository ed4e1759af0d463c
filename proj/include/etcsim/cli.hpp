#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace etcsim {

// Exit codes: 0 success, 2 validation failure, 3 runtime divergence or zeno
// abort.

/// Prints one line per violated predicate; empty report means exit 0.
int cmd_validate(const std::string& scenario_path);

/// Writes trace.csv, events.csv, summary.json under out_dir and prints a
/// one-line summary.
int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override = std::nullopt);

/// Writes sweep.csv and trends.json under out_dir. ETC_SIM_JOBS overrides
/// the jobs argument.
int cmd_sweep(const std::string& sweep_path, const std::string& out_dir, int jobs);

int run_cli(int argc, char** argv);

}  // namespace etcsim
