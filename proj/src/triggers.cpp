#include "etcsim/triggers.hpp"

#include "etcsim/errors.hpp"
#include "etcsim/graph.hpp"

#include <cmath>
#include <sstream>

namespace etcsim {

TriggerKind trigger_kind_from_string(const std::string& s) {
    if (s == "Centralized") return TriggerKind::Centralized;
    if (s == "DecentralizedState") return TriggerKind::DecentralizedState;
    if (s == "BroadcastZhat") return TriggerKind::BroadcastZhat;
    if (s == "BroadcastPhi") return TriggerKind::BroadcastPhi;
    if (s == "PeriodicZhat") return TriggerKind::PeriodicZhat;
    if (s == "PeriodicPhi") return TriggerKind::PeriodicPhi;
    if (s == "TimeDependent") return TriggerKind::TimeDependent;
    if (s == "Dynamic") return TriggerKind::Dynamic;
    if (s == "DynamicMIET") return TriggerKind::DynamicMiet;
    if (s == "Directed") return TriggerKind::Directed;
    if (s == "DITime") return TriggerKind::DiTime;
    if (s == "LinearState") return TriggerKind::LinearState;
    if (s == "LinearTime") return TriggerKind::LinearTime;
    throw ConfigError("unknown trigger kind: " + s);
}

std::string to_string(TriggerKind kind) {
    switch (kind) {
        case TriggerKind::Centralized: return "Centralized";
        case TriggerKind::DecentralizedState: return "DecentralizedState";
        case TriggerKind::BroadcastZhat: return "BroadcastZhat";
        case TriggerKind::BroadcastPhi: return "BroadcastPhi";
        case TriggerKind::PeriodicZhat: return "PeriodicZhat";
        case TriggerKind::PeriodicPhi: return "PeriodicPhi";
        case TriggerKind::TimeDependent: return "TimeDependent";
        case TriggerKind::Dynamic: return "Dynamic";
        case TriggerKind::DynamicMiet: return "DynamicMIET";
        case TriggerKind::Directed: return "Directed";
        case TriggerKind::DiTime: return "DITime";
        case TriggerKind::LinearState: return "LinearState";
        case TriggerKind::LinearTime: return "LinearTime";
    }
    return "?";
}

DetectionMode detection_mode(TriggerKind kind) {
    return (kind == TriggerKind::PeriodicZhat || kind == TriggerKind::PeriodicPhi)
               ? DetectionMode::Periodic
               : DetectionMode::Dense;
}

TriggerLevel make_level(double g, double h) {
    TriggerLevel lvl;
    lvl.error_measure = g;
    lvl.threshold = h;
    lvl.fire = (g >= h) && !(g == 0.0 && h == 0.0);
    return lvl;
}

TriggerLevel eval_centralized(const Eigen::VectorXd& e, const Eigen::VectorXd& lap_x,
                              double laplacian_norm, double sigma) {
    return make_level(e.norm(), sigma * lap_x.norm() / laplacian_norm);
}

TriggerLevel eval_decentralized_state(double e_i, double z_i, int n_i, double sigma_i, double a) {
    const double card = static_cast<double>(n_i);
    return make_level(e_i * e_i, sigma_i * a * (1.0 - a * card) / card * z_i * z_i);
}

TriggerLevel eval_broadcast_zhat(double e_i, double zhat_i, int n_i, double sigma_i, double a) {
    const double card = static_cast<double>(n_i);
    return make_level(e_i * e_i, sigma_i * a * (1.0 - a * card) / card * zhat_i * zhat_i);
}

TriggerLevel eval_broadcast_phi(double e_i, double phihat_i, int n_i, double sigma_i) {
    return make_level(e_i * e_i, sigma_i * phihat_i / (4.0 * static_cast<double>(n_i)));
}

TriggerLevel eval_periodic_zhat(double e_i, double zhat_i, double sigma_i) {
    return make_level(e_i * e_i, sigma_i * zhat_i * zhat_i);
}

TriggerLevel eval_periodic_phi(double e_i, double phihat_i, int n_i, double sigma_i) {
    return eval_broadcast_phi(e_i, phihat_i, n_i, sigma_i);
}

TriggerLevel eval_time_dependent(double e_abs, double t, double c0, double c1, double alpha) {
    return make_level(std::abs(e_abs), c0 + c1 * std::exp(-alpha * t));
}

TriggerLevel eval_directed(double e_i, double weighted_phihat_i, int n_out_i, double sigma_i) {
    return make_level(e_i * e_i,
                      sigma_i * weighted_phihat_i / (4.0 * static_cast<double>(n_out_i)));
}

TriggerLevel eval_di_time(double er_i, double ev_i, double gamma, double t, double c0, double c1,
                          double alpha) {
    return make_level(std::hypot(er_i, gamma * ev_i), c0 + c1 * std::exp(-alpha * t));
}

TriggerLevel eval_linear_state(const Eigen::VectorXd& e_i, const Eigen::VectorXd& zhat_i,
                               const Eigen::MatrixXd& pbbtp, int n_i, int n_agents,
                               double sigma_i, double c1, double c2, double b_i) {
    const double card = static_cast<double>(n_i);
    const double cross = zhat_i.dot(pbbtp * e_i);
    const double e_quad = e_i.dot(pbbtp * e_i);
    const double bracket = 2.0 * c1 * card * (1.0 + b_i) + (c2 - c1) / b_i +
                           c1 * static_cast<double>(n_agents - 1) * (b_i + 3.0 / b_i);
    const double delta = 2.0 * (c2 - c1) * card * cross + card * e_quad * bracket;
    const double theta_scale = 2.0 * c2 - b_i * card * (c2 - c1);
    const double threshold = sigma_i * theta_scale * zhat_i.dot(pbbtp * zhat_i);
    return make_level(delta, threshold);
}

TriggerLevel eval_linear_time(double e_norm, double t, double c1, double alpha) {
    return make_level(e_norm, c1 * std::exp(-alpha * t));
}

DynamicLevel eval_dynamic(double e_i, double phihat_i, double chi_i, int n_i, double sigma_i) {
    DynamicLevel out;
    const double card = static_cast<double>(n_i);
    out.level = make_level(card * e_i * e_i, sigma_i / 4.0 * phihat_i + chi_i);
    out.chi_dot = -chi_i + sigma_i / 4.0 * phihat_i - e_i * e_i;
    return out;
}

DynamicLevel eval_dynamic_miet(double e_i, double phihat_i, double zhat_i, double chi_i) {
    DynamicLevel out;
    out.level.error_measure = -chi_i;
    out.level.threshold = 0.0;
    out.level.fire = chi_i <= 0.0;
    if (e_i == 0.0) {
        out.chi_dot = -1.0;
    } else {
        const double branch =
            phihat_i / (e_i * e_i) + 2.0 * (chi_i + 1.0) * zhat_i / e_i - 1.0;
        out.chi_dot = std::min(-1.0, branch);
        if (!std::isfinite(out.chi_dot)) out.chi_dot = -1.0;
    }
    return out;
}

double miet_centralized(double sigma, double laplacian_norm) {
    return sigma / (laplacian_norm * (1.0 + sigma));
}

double miet_dynamic(int n_i) {
    const double root = std::sqrt(static_cast<double>(n_i));
    return (std::atan(2.0 * root) - std::atan(root)) / root;
}

double time_dependent_radius(double c0, int n_agents, const SpectralSummary& s) {
    return s.laplacian_norm * std::sqrt(static_cast<double>(n_agents)) * c0 / s.lambda2;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void add(std::vector<Violation>* out, const std::string& predicate, const std::string& detail) {
    if (out != nullptr) out->push_back({predicate, detail});
}

Eigen::VectorXd expand(const std::vector<double>& values, int n, double fallback) {
    Eigen::VectorXd v(n);
    if (values.empty()) {
        v.setConstant(fallback);
    } else if (values.size() == 1) {
        v.setConstant(values[0]);
    } else if (static_cast<int>(values.size()) == n) {
        for (int i = 0; i < n; ++i) v(i) = values[i];
    } else {
        throw ConfigError("per-agent parameter list has " + std::to_string(values.size()) +
                          " entries for " + std::to_string(n) + " agents");
    }
    return v;
}

}  // namespace

ResolvedTrigger resolve_trigger(const TriggerSpec& spec, const Graph& g,
                                const SpectralSummary& s, std::vector<Violation>* violations) {
    const int n = g.size();
    const std::string name = to_string(spec.kind);

    ResolvedTrigger r;
    r.kind = spec.kind;
    r.detection = detection_mode(spec.kind);
    r.sigma = expand(spec.sigma, n, 0.5);
    r.a = spec.a.value_or(1.0 / (2.0 * g.max_degree()));
    r.c0 = spec.c0;
    r.c1 = spec.c1;
    r.alpha = spec.alpha.value_or(0.5 * s.lambda2);
    r.h = spec.h.value_or(0.0);
    r.gamma = spec.gamma;
    r.c1_lin = spec.c1_lin.value_or(1.0 / s.lambda2);
    r.c2_lin = spec.c2_lin.value_or(r.c1_lin);
    r.b = expand(spec.b, n, 1.0);
    r.chi0 = spec.chi0;

    const bool sigma_zero_ok = spec.kind == TriggerKind::Dynamic;
    const bool uses_sigma =
        spec.kind != TriggerKind::TimeDependent && spec.kind != TriggerKind::DiTime &&
        spec.kind != TriggerKind::LinearTime && spec.kind != TriggerKind::DynamicMiet;
    if (uses_sigma) {
        for (int i = 0; i < n; ++i) {
            const double si = r.sigma(i);
            const bool ok = sigma_zero_ok ? (si >= 0.0 && si < 1.0) : (si > 0.0 && si < 1.0);
            if (!ok) {
                add(violations, name + ": sigma_i in " + (sigma_zero_ok ? "[0,1)" : "(0,1)"),
                    "sigma_" + std::to_string(i + 1) + " = " + fmt(si));
                break;
            }
        }
    }

    switch (spec.kind) {
        case TriggerKind::Centralized:
            if (!g.undirected())
                add(violations, "Centralized: undirected connected graph", "graph is directed");
            break;
        case TriggerKind::DecentralizedState:
        case TriggerKind::BroadcastZhat: {
            const double bound = 1.0 / g.max_degree();
            if (!(r.a > 0.0 && r.a < bound)) {
                add(violations, name + ": 0 < a < 1/|N_i| for all i",
                    "a = " + fmt(r.a) + ", 1/max_degree = " + fmt(bound));
            }
            break;
        }
        case TriggerKind::PeriodicZhat: {
            if (!(r.h > 0.0)) {
                add(violations, "PeriodicZhat: h > 0", "h = " + fmt(r.h));
                break;
            }
            const double h_bound = 1.0 / (2.0 * s.lambdaN);
            if (r.h > h_bound) {
                add(violations, "PeriodicZhat: h <= 1/(2*lambda_N)",
                    "h = " + fmt(r.h) + ", bound = " + fmt(h_bound));
            }
            const double sigma_bound = 1.0 / (s.lambdaN * s.lambdaN);
            if (!(r.sigma.maxCoeff() < sigma_bound)) {
                add(violations, "PeriodicZhat: sigma_max < 1/lambda_N^2",
                    "sigma_max = " + fmt(r.sigma.maxCoeff()) + ", bound = " + fmt(sigma_bound));
            }
            break;
        }
        case TriggerKind::PeriodicPhi: {
            if (!(r.h > 0.0)) {
                add(violations, "PeriodicPhi: h > 0", "h = " + fmt(r.h));
                break;
            }
            const double lhs =
                r.sigma.maxCoeff() + 4.0 * r.h * g.max_degree() * g.max_degree();
            if (!(lhs < 1.0)) {
                add(violations, "PeriodicPhi: sigma_max + 4*h*|N_max|^2 < 1",
                    "lhs = " + fmt(lhs));
            }
            break;
        }
        case TriggerKind::TimeDependent:
        case TriggerKind::DiTime:
            if (r.c0 < 0.0 || r.c1 < 0.0 || r.c0 + r.c1 <= 0.0) {
                add(violations, name + ": c0, c1 >= 0 and c0 + c1 > 0",
                    "c0 = " + fmt(r.c0) + ", c1 = " + fmt(r.c1));
            }
            if (spec.kind == TriggerKind::DiTime && !(r.gamma > 0.0)) {
                add(violations, "DITime: gamma > 0", "gamma = " + fmt(r.gamma));
            }
            break;
        case TriggerKind::Dynamic:
        case TriggerKind::DynamicMiet:
            if (!(r.chi0 > 0.0)) {
                add(violations, name + ": chi(0) > 0", "chi0 = " + fmt(r.chi0));
            }
            break;
        case TriggerKind::Directed:
            if (!g.strongly_connected()) {
                add(violations, "Directed: strongly connected digraph", "not strongly connected");
            } else if (!g.is_weight_balanced()) {
                add(violations, "Directed: weight-balanced digraph", "column sums of L nonzero");
            }
            break;
        case TriggerKind::LinearState: {
            // 1e-9 slack keeps exact boundary values valid under eigensolver
            // rounding.
            if (!(r.c1_lin >= 1.0 / s.lambda2 - 1e-9)) {
                add(violations, "LinearState: c1 >= 1/lambda2",
                    "c1 = " + fmt(r.c1_lin) + ", 1/lambda2 = " + fmt(1.0 / s.lambda2));
            }
            if (!(r.c2_lin > 0.0)) {
                add(violations, "LinearState: c2 > 0", "c2 = " + fmt(r.c2_lin));
            }
            for (int i = 0; i < n; ++i) {
                const double bi = r.b(i);
                bool ok = bi > 0.0;
                if (ok && r.c2_lin > r.c1_lin) {
                    ok = bi < 2.0 * r.c2_lin / (g.degree(i) * (r.c2_lin - r.c1_lin));
                }
                if (!ok) {
                    add(violations,
                        "LinearState: 0 < b_i < 2*c2/(|N_i|*(c2-c1)) for c2 > c1, b_i > 0 "
                        "otherwise",
                        "b_" + std::to_string(i + 1) + " = " + fmt(bi));
                    break;
                }
            }
            break;
        }
        case TriggerKind::LinearTime:
            if (!(r.c1 > 0.0) || !(r.alpha > 0.0)) {
                add(violations, "LinearTime: c1, alpha > 0",
                    "c1 = " + fmt(r.c1) + ", alpha = " + fmt(r.alpha));
            }
            break;
        case TriggerKind::BroadcastPhi:
            break;
    }
    return r;
}

}  // namespace etcsim
