#pragma once

#include "etcsim/scenario.hpp"
#include "etcsim/zeno.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace etcsim {

struct TraceEvent {
    int agent = 0;  // 0-based
    double t = 0.0;
    std::string kind;  // "broadcast"
};

/// Timestamped run record: state samples on the output grid plus at every
/// event, the event log, and instrumentation series.
struct Trace {
    DynamicsKind dynamics = DynamicsKind::SingleIntegrator;
    int n_agents = 0;
    std::vector<std::string> state_labels;

    std::vector<double> t;
    std::vector<Eigen::VectorXd> state;   // layout per state_labels
    std::vector<double> lyapunov;         // V = x' (L x I) x / 2
    std::vector<double> disagreement;     // || x - mean ||
    std::vector<char> grid_sample;        // 1 for output-grid samples

    std::vector<TraceEvent> events;  // strictly time-ordered
    ZenoReport zeno;

    // Online instrumentation maintained by the runner.
    double max_enforcement_overshoot = 0.0;  // g - h at committed non-event samples
    double max_crossing_residual = 0.0;      // |g - h| / (1 + h) at refined crossings

    std::vector<std::vector<double>> per_agent_event_times() const;
};

/// Hybrid run: exact continuous segments, dense or periodic event detection,
/// bisection-refined crossings, channel effects, zeno watchdog.
/// Deterministic for a fixed (scenario, seed).
Trace run_scenario(const Scenario& sc);

/// x(t) = exp(-L t) x0 on the grid via the symmetric eigendecomposition;
/// the continuous-flow oracle. One row per grid entry.
Eigen::MatrixXd reference_trajectory(const Graph& g, const Eigen::VectorXd& x0,
                                     const std::vector<double>& t_grid);

}  // namespace etcsim
