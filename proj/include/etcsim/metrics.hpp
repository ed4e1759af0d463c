#pragma once

#include "etcsim/sim_engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace etcsim {

struct AgentEventStats {
    int agent = 0;  // 1-based in reports
    int count = 0;
    std::optional<double> min_interevent;
    std::optional<double> mean_interevent;
};

struct RunSummary {
    int total_events = 0;
    std::vector<AgentEventStats> per_agent;
    std::optional<double> min_interevent;   // over all agents
    std::optional<double> mean_interevent;
    double final_disagreement = 0.0;
    double v_end = 0.0;
    std::optional<double> time_to_tolerance;
    bool zeno_flag = false;
    std::string zeno_diagnostic;
};

RunSummary compute_metrics(const Trace& trace, double tolerance = 1e-3);

std::string summary_to_json(const RunSummary& s);
RunSummary summary_from_json(const std::string& text);

}  // namespace etcsim
