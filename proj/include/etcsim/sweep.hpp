#pragma once

#include "etcsim/metrics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace etcsim {

/// Parameter sweep over one scenario field: tasks are the cross product of
/// the value list and the repetition count (seed offsets).
struct SweepSpec {
    std::string base_scenario_json;
    std::string parameter;            // dotted path, e.g. "trigger.sigma"
    std::vector<std::string> values;  // JSON literals
    int repetitions = 1;
};

/// base_dir resolves a relative "base_scenario" file reference.
SweepSpec sweep_from_json(const std::string& text, const std::string& base_dir);

struct SweepRow {
    std::string value;
    std::uint64_t seed = 0;
    RunSummary summary;
    double radius_bound = std::numeric_limits<double>::quiet_NaN();  // time-dependent kinds
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepRow> rows;       // task order: values outer, repetitions inner
    std::string trends_json;          // per-metric monotonicity over value means
    std::vector<std::string> warnings;
};

/// Fans tasks over `jobs` worker threads; rows come back in task order.
SweepResult run_sweep(const SweepSpec& spec, int jobs);

std::string sweep_to_csv(const SweepResult& result);

}  // namespace etcsim
