#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace etcsim {

class Graph;
struct SpectralSummary;

enum class TriggerKind {
    Centralized,         // global rebroadcast, threshold sigma*|Lx|/|L|
    DecentralizedState,  // per-agent, needs continuous neighbor states
    BroadcastZhat,       // per-agent, threshold from zhat
    BroadcastPhi,        // per-agent, threshold from phihat
    PeriodicZhat,        // evaluated on the sampling grid only
    PeriodicPhi,
    TimeDependent,       // |e_i| against c0 + c1*exp(-alpha*t)
    Dynamic,             // internal chi with relaxation dynamics
    DynamicMiet,         // internal chi with hard inter-event floor
    Directed,            // weight-balanced digraph, out-neighbor threshold
    DiTime,              // double integrator, FOH error against decaying bound
    LinearState,         // linear dynamics, quadratic-form threshold
    LinearTime,          // linear dynamics, |e_i| against c1*exp(-alpha*t)
};

enum class DetectionMode { Dense, Periodic };

TriggerKind trigger_kind_from_string(const std::string& s);
std::string to_string(TriggerKind kind);
DetectionMode detection_mode(TriggerKind kind);

/// Parameters as given in a scenario file. Unset optionals take documented
/// defaults when resolved against a concrete graph; vectors broadcast a
/// single entry to all agents.
struct TriggerSpec {
    TriggerKind kind = TriggerKind::BroadcastPhi;
    std::vector<double> sigma;  // default 0.5
    std::optional<double> a;    // default 1/(2*max_degree)
    double c0 = 0.0;
    double c1 = 0.3;
    std::optional<double> alpha;  // default 0.5*lambda2
    std::optional<double> h;      // sampling period, periodic kinds
    double gamma = 1.0;           // double-integrator damping
    std::optional<double> c1_lin; // default 1/lambda2
    std::optional<double> c2_lin; // default c1_lin
    std::vector<double> b;        // default 1
    double chi0 = 1.0;
};

/// Outcome of one trigger evaluation: error measure g(e) against threshold
/// h(w). Boundary rule: g == h == 0 does not fire (no events at exact
/// consensus); h == 0 with g > 0 fires.
struct TriggerLevel {
    double error_measure = 0.0;
    double threshold = 0.0;
    bool fire = false;
};

TriggerLevel make_level(double g, double h);

TriggerLevel eval_centralized(const Eigen::VectorXd& e, const Eigen::VectorXd& lap_x,
                              double laplacian_norm, double sigma);
TriggerLevel eval_decentralized_state(double e_i, double z_i, int n_i, double sigma_i, double a);
TriggerLevel eval_broadcast_zhat(double e_i, double zhat_i, int n_i, double sigma_i, double a);
TriggerLevel eval_broadcast_phi(double e_i, double phihat_i, int n_i, double sigma_i);
TriggerLevel eval_periodic_zhat(double e_i, double zhat_i, double sigma_i);
TriggerLevel eval_periodic_phi(double e_i, double phihat_i, int n_i, double sigma_i);
TriggerLevel eval_time_dependent(double e_abs, double t, double c0, double c1, double alpha);
TriggerLevel eval_directed(double e_i, double weighted_phihat_i, int n_out_i, double sigma_i);
TriggerLevel eval_di_time(double er_i, double ev_i, double gamma, double t, double c0, double c1,
                          double alpha);
TriggerLevel eval_linear_state(const Eigen::VectorXd& e_i, const Eigen::VectorXd& zhat_i,
                               const Eigen::MatrixXd& pbbtp, int n_i, int n_agents,
                               double sigma_i, double c1, double c2, double b_i);
TriggerLevel eval_linear_time(double e_norm, double t, double c1, double alpha);

/// Dynamic kinds also report the derivative of the internal variable chi.
struct DynamicLevel {
    TriggerLevel level;
    double chi_dot = 0.0;
};

DynamicLevel eval_dynamic(double e_i, double phihat_i, double chi_i, int n_i, double sigma_i);
/// chi_dot = min{-1, phihat/e^2 + 2(chi+1) zhat/e - 1}; the constant branch
/// is taken at e == 0. Fires when chi <= 0; chi resets to 1 at own events.
DynamicLevel eval_dynamic_miet(double e_i, double phihat_i, double zhat_i, double chi_i);

/// Guaranteed inter-event floors.
double miet_centralized(double sigma, double laplacian_norm);
double miet_dynamic(int n_i);

/// Radius of the practical-consensus ball for the time-dependent kind.
double time_dependent_radius(double c0, int n_agents, const SpectralSummary& s);

struct Violation {
    std::string predicate;
    std::string detail;
};

/// Parameters after defaults are filled in against a concrete graph.
struct ResolvedTrigger {
    TriggerKind kind = TriggerKind::BroadcastPhi;
    DetectionMode detection = DetectionMode::Dense;
    Eigen::VectorXd sigma;
    double a = 0.0;
    double c0 = 0.0;
    double c1 = 0.0;
    double alpha = 0.0;
    double h = 0.0;
    double gamma = 1.0;
    double c1_lin = 0.0;
    double c2_lin = 0.0;
    Eigen::VectorXd b;
    double chi0 = 1.0;

    bool uses_chi() const {
        return kind == TriggerKind::Dynamic || kind == TriggerKind::DynamicMiet;
    }
};

/// Fills defaults and collects every violated validity predicate, each named
/// after the trigger rule it belongs to. The result is usable iff no
/// violations were appended.
ResolvedTrigger resolve_trigger(const TriggerSpec& spec, const Graph& g,
                                const SpectralSummary& s, std::vector<Violation>* violations);

}  // namespace etcsim
