#pragma once

#include "etcsim/graph.hpp"
#include "etcsim/triggers.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace etcsim {

enum class DynamicsKind { SingleIntegrator, DoubleIntegrator, Linear };

DynamicsKind dynamics_kind_from_string(const std::string& s);
std::string to_string(DynamicsKind kind);

struct QuantizerSpec {
    bool uniform = false;
    double step = 0.0;  // > 0 when uniform

    double apply(double v) const;
};

/// Broadcast channel between agents: payloads are quantized once at the
/// sender, then dropped or delayed per recipient (non-consistent reception).
struct ChannelModel {
    double delay = 0.0;      // fixed per-link delay, seconds
    double drop_prob = 0.0;  // per-recipient Bernoulli drop
    QuantizerSpec quantizer;

    bool ideal() const { return delay == 0.0 && drop_prob == 0.0 && !quantizer.uniform; }
};

struct ZenoMonitorParams {
    int max_events_per_window = 50;
    double window = 0.1;
    double eps_z = 1e-7;  // consecutive same-agent events closer than this
};

/// Linear-dynamics block: the gain design runs at scenario setup.
struct LinearScenario {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    double alpha_margin = 0.1;
    std::optional<double> c_override;
    Eigen::MatrixXd x0;  // n x N, column per agent
};

struct Scenario {
    Graph graph;
    DynamicsKind dynamics = DynamicsKind::SingleIntegrator;
    TriggerSpec trigger;

    Eigen::VectorXd x0;      // single integrator
    Eigen::VectorXd r0, v0;  // double integrator
    std::optional<LinearScenario> linear;

    double horizon = 20.0;
    ChannelModel channel;
    double detection_step = 1e-3;
    double output_grid = 1e-2;
    std::uint64_t seed = 0;
    ZenoMonitorParams zeno;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_text() const;
};

/// Runs every validity predicate: graph requirements of the trigger kind,
/// parameter ranges, detection-step bounds, initial-state shapes.
ValidationReport validate_scenario(const Scenario& sc);

Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& sc);
Scenario load_scenario_file(const std::string& path);

}  // namespace etcsim
