#include "etcsim/scenario.hpp"

#include "etcsim/controller_design.hpp"
#include "etcsim/errors.hpp"
#include "etcsim/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace etcsim {

using nlohmann::json;

DynamicsKind dynamics_kind_from_string(const std::string& s) {
    if (s == "single") return DynamicsKind::SingleIntegrator;
    if (s == "double") return DynamicsKind::DoubleIntegrator;
    if (s == "linear") return DynamicsKind::Linear;
    throw ConfigError("unknown dynamics kind: " + s);
}

std::string to_string(DynamicsKind kind) {
    switch (kind) {
        case DynamicsKind::SingleIntegrator: return "single";
        case DynamicsKind::DoubleIntegrator: return "double";
        case DynamicsKind::Linear: return "linear";
    }
    return "?";
}

double QuantizerSpec::apply(double v) const {
    if (!uniform) return v;
    return step * std::round(v / step);
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    for (const auto& v : violations) {
        os << "violation: " << v.predicate;
        if (!v.detail.empty()) os << " (" << v.detail << ")";
        os << "\n";
    }
    return os.str();
}

namespace {

std::vector<double> number_or_list(const json& j) {
    if (j.is_number()) return {j.get<double>()};
    return j.get<std::vector<double>>();
}

Eigen::VectorXd to_vector(const json& j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                             static_cast<Eigen::Index>(values.size()));
}

Eigen::MatrixXd to_matrix(const json& j) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw ConfigError("matrix literal has no rows");
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw ConfigError("ragged matrix literal");
        for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
    }
    return m;
}

json from_vector(const Eigen::VectorXd& v) {
    json j = json::array();
    for (int i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

json from_matrix(const Eigen::MatrixXd& m) {
    json j = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        j.push_back(row);
    }
    return j;
}

Eigen::VectorXd random_uniform_vector(int n, double lo, double hi, std::uint64_t seed) {
    std::mt19937_64 gen(seed ^ 0x6a09e667f3bcc908ull);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(gen, lo, hi);
    return v;
}

TriggerSpec trigger_from_json(const json& j) {
    TriggerSpec t;
    t.kind = trigger_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("sigma")) t.sigma = number_or_list(j.at("sigma"));
    if (j.contains("a")) t.a = j.at("a").get<double>();
    if (j.contains("c0")) t.c0 = j.at("c0").get<double>();
    if (j.contains("c1")) t.c1 = j.at("c1").get<double>();
    if (j.contains("alpha")) t.alpha = j.at("alpha").get<double>();
    if (j.contains("h")) t.h = j.at("h").get<double>();
    if (j.contains("gamma")) t.gamma = j.at("gamma").get<double>();
    if (j.contains("c1_lin")) t.c1_lin = j.at("c1_lin").get<double>();
    if (j.contains("c2_lin")) t.c2_lin = j.at("c2_lin").get<double>();
    if (j.contains("b")) t.b = number_or_list(j.at("b"));
    if (j.contains("chi0")) t.chi0 = j.at("chi0").get<double>();
    if (j.contains("detection")) {
        const auto mode = j.at("detection").get<std::string>();
        const bool periodic = detection_mode(t.kind) == DetectionMode::Periodic;
        if ((mode == "periodic") != periodic) {
            throw ConfigError("detection '" + mode + "' does not match trigger kind " +
                              to_string(t.kind));
        }
    }
    return t;
}

json trigger_to_json(const TriggerSpec& t) {
    json j;
    j["kind"] = to_string(t.kind);
    if (!t.sigma.empty()) j["sigma"] = t.sigma.size() == 1 ? json(t.sigma[0]) : json(t.sigma);
    if (t.a) j["a"] = *t.a;
    j["c0"] = t.c0;
    j["c1"] = t.c1;
    if (t.alpha) j["alpha"] = *t.alpha;
    if (t.h) j["h"] = *t.h;
    j["gamma"] = t.gamma;
    if (t.c1_lin) j["c1_lin"] = *t.c1_lin;
    if (t.c2_lin) j["c2_lin"] = *t.c2_lin;
    if (!t.b.empty()) j["b"] = t.b.size() == 1 ? json(t.b[0]) : json(t.b);
    j["chi0"] = t.chi0;
    j["detection"] =
        detection_mode(t.kind) == DetectionMode::Periodic ? "periodic" : "dense";
    return j;
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("scenario parse error: ") + e.what());
    }

    if (j.value("schema_version", 1) != 1) {
        throw ConfigError("unsupported schema_version");
    }

    Scenario sc;
    const json& jg = j.at("graph");
    if (jg.contains("generator")) {
        const json& gen = jg.at("generator");
        sc.graph = generate_graph(graph_kind_from_string(gen.at("kind").get<std::string>()),
                                  gen.at("n").get<int>(), gen.value("seed", 0ull));
    } else {
        sc.graph = Graph::from_json(jg.dump());
    }

    sc.dynamics = dynamics_kind_from_string(j.value("dynamics", std::string("single")));
    sc.trigger = trigger_from_json(j.at("trigger"));

    sc.horizon = j.value("horizon", 20.0);
    sc.detection_step = j.value("detection_step", 1e-3);
    sc.output_grid = j.value("output_grid", 1e-2);
    sc.seed = j.value("seed", 0ull);

    if (j.contains("channel")) {
        const json& jc = j.at("channel");
        sc.channel.delay = jc.value("delay", 0.0);
        sc.channel.drop_prob = jc.value("drop_prob", 0.0);
        if (jc.contains("quantizer")) {
            const json& q = jc.at("quantizer");
            const auto kind = q.value("kind", std::string("none"));
            if (kind == "uniform") {
                sc.channel.quantizer.uniform = true;
                sc.channel.quantizer.step = q.value("step", 0.0);
            } else if (kind != "none") {
                throw ConfigError("unknown quantizer kind: " + kind);
            }
        }
    }

    if (j.contains("zeno")) {
        const json& z = j.at("zeno");
        sc.zeno.max_events_per_window = z.value("max_events_per_window", 50);
        sc.zeno.window = z.value("window", 0.1);
        sc.zeno.eps_z = z.value("eps_z", 1e-7);
    }

    if (j.contains("linear")) {
        LinearScenario lin;
        const json& jl = j.at("linear");
        lin.A = to_matrix(jl.at("A"));
        lin.B = to_matrix(jl.at("B"));
        lin.alpha_margin = jl.value("alpha_margin", 0.1);
        if (jl.contains("c_override") && !jl.at("c_override").is_null()) {
            lin.c_override = jl.at("c_override").get<double>();
        }
        sc.linear = std::move(lin);
    }

    const int n = sc.graph.size();
    if (!j.contains("initial_state")) throw ConfigError("scenario needs initial_state");
    const json& init = j.at("initial_state");
    if (init.contains("random_uniform")) {
        const json& r = init.at("random_uniform");
        const double lo = r.value("low", 0.0);
        const double hi = r.value("high", 1.0);
        const std::uint64_t seed = r.value("seed", 0ull);
        switch (sc.dynamics) {
            case DynamicsKind::SingleIntegrator:
                sc.x0 = random_uniform_vector(n, lo, hi, seed);
                break;
            case DynamicsKind::DoubleIntegrator:
                sc.r0 = random_uniform_vector(n, lo, hi, seed);
                sc.v0 = random_uniform_vector(n, lo, hi, seed + 1);
                break;
            case DynamicsKind::Linear: {
                if (!sc.linear) throw ConfigError("linear dynamics needs a linear block");
                const int dim = static_cast<int>(sc.linear->A.rows());
                sc.linear->x0.resize(dim, n);
                for (int i = 0; i < n; ++i) {
                    sc.linear->x0.col(i) =
                        random_uniform_vector(dim, lo, hi, seed + 17 * (i + 1));
                }
                break;
            }
        }
    } else {
        switch (sc.dynamics) {
            case DynamicsKind::SingleIntegrator:
                sc.x0 = to_vector(init.at("x"));
                break;
            case DynamicsKind::DoubleIntegrator:
                sc.r0 = to_vector(init.at("r"));
                sc.v0 = to_vector(init.at("v"));
                break;
            case DynamicsKind::Linear: {
                if (!sc.linear) throw ConfigError("linear dynamics needs a linear block");
                // One row per agent for readability; stored column per agent.
                sc.linear->x0 = to_matrix(init.at("x")).transpose();
                break;
            }
        }
    }
    return sc;
}

std::string scenario_to_json(const Scenario& sc) {
    json j;
    j["schema_version"] = 1;
    j["graph"] = json::parse(sc.graph.to_json());
    j["dynamics"] = to_string(sc.dynamics);
    j["trigger"] = trigger_to_json(sc.trigger);
    j["horizon"] = sc.horizon;
    j["detection_step"] = sc.detection_step;
    j["output_grid"] = sc.output_grid;
    j["seed"] = sc.seed;
    j["channel"] = {
        {"delay", sc.channel.delay},
        {"drop_prob", sc.channel.drop_prob},
        {"quantizer",
         sc.channel.quantizer.uniform
             ? json({{"kind", "uniform"}, {"step", sc.channel.quantizer.step}})
             : json({{"kind", "none"}})},
    };
    j["zeno"] = {{"max_events_per_window", sc.zeno.max_events_per_window},
                 {"window", sc.zeno.window},
                 {"eps_z", sc.zeno.eps_z}};
    switch (sc.dynamics) {
        case DynamicsKind::SingleIntegrator:
            j["initial_state"] = {{"x", from_vector(sc.x0)}};
            break;
        case DynamicsKind::DoubleIntegrator:
            j["initial_state"] = {{"r", from_vector(sc.r0)}, {"v", from_vector(sc.v0)}};
            break;
        case DynamicsKind::Linear:
            j["initial_state"] = {{"x", from_matrix(sc.linear->x0.transpose())}};
            break;
    }
    if (sc.linear) {
        json jl;
        jl["A"] = from_matrix(sc.linear->A);
        jl["B"] = from_matrix(sc.linear->B);
        jl["alpha_margin"] = sc.linear->alpha_margin;
        if (sc.linear->c_override) jl["c_override"] = *sc.linear->c_override;
        j["linear"] = std::move(jl);
    }
    return j.dump(2);
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

namespace {

bool dynamics_match(TriggerKind kind, DynamicsKind dyn) {
    switch (kind) {
        case TriggerKind::DiTime:
            return dyn == DynamicsKind::DoubleIntegrator;
        case TriggerKind::LinearState:
        case TriggerKind::LinearTime:
            return dyn == DynamicsKind::Linear;
        default:
            return dyn == DynamicsKind::SingleIntegrator;
    }
}

}  // namespace

ValidationReport validate_scenario(const Scenario& sc) {
    ValidationReport report;
    auto fail = [&](const std::string& predicate, const std::string& detail) {
        report.violations.push_back({predicate, detail});
    };

    const int n = sc.graph.size();
    if (n < 2) {
        fail("scenario: at least two agents", "n = " + std::to_string(n));
        return report;
    }

    if (!dynamics_match(sc.trigger.kind, sc.dynamics)) {
        fail("scenario: trigger kind matches dynamics kind",
             to_string(sc.trigger.kind) + " with " + to_string(sc.dynamics) + " dynamics");
        return report;
    }

    const bool needs_directed = sc.trigger.kind == TriggerKind::Directed;
    if (needs_directed) {
        if (!sc.graph.strongly_connected()) {
            fail("Directed: strongly connected digraph", "");
            return report;
        }
    } else if (!sc.graph.undirected() || !sc.graph.connected()) {
        fail(to_string(sc.trigger.kind) + ": connected undirected graph",
             sc.graph.undirected() ? "graph is disconnected" : "graph is directed");
        return report;
    }

    const SpectralSummary spectral = spectral_summary(sc.graph);
    ResolvedTrigger trig = resolve_trigger(sc.trigger, sc.graph, spectral, &report.violations);

    if (!(sc.horizon > 0.0)) fail("scenario: horizon > 0", "");
    if (!(sc.detection_step > 0.0)) fail("scenario: detection_step > 0", "");
    if (!(sc.output_grid > 0.0)) fail("scenario: output_grid > 0", "");

    if (trig.detection == DetectionMode::Periodic && trig.h > 0.0 &&
        sc.detection_step > trig.h / 4.0 + 1e-15) {
        fail("scenario: detection_step <= h/4 for periodic kinds",
             "detection_step = " + std::to_string(sc.detection_step));
    }
    if (sc.trigger.kind == TriggerKind::Centralized) {
        const double tau = miet_centralized(trig.sigma.minCoeff(), spectral.laplacian_norm);
        if (sc.detection_step > tau / 10.0) {
            fail("scenario: detection_step <= tau_min/10 (centralized floor)",
                 "tau_min = " + std::to_string(tau));
        }
    }
    if (sc.trigger.kind == TriggerKind::DynamicMiet) {
        double tau = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) tau = std::min(tau, miet_dynamic(sc.graph.degree(i)));
        if (sc.detection_step > tau / 10.0) {
            fail("scenario: detection_step <= tau_min/10 (dynamic floor)",
                 "tau_min = " + std::to_string(tau));
        }
    }

    if (sc.channel.delay < 0.0) fail("channel: delay >= 0", "");
    if (sc.channel.drop_prob < 0.0 || sc.channel.drop_prob >= 1.0) {
        fail("channel: drop_prob in [0,1)", "drop_prob = " + std::to_string(sc.channel.drop_prob));
    }
    if (sc.channel.quantizer.uniform && !(sc.channel.quantizer.step > 0.0)) {
        fail("channel: quantizer step > 0", "");
    }

    if (sc.zeno.max_events_per_window <= 0 || !(sc.zeno.window > 0.0) ||
        !(sc.zeno.eps_z > 0.0)) {
        fail("scenario: zeno monitor parameters positive", "");
    }

    switch (sc.dynamics) {
        case DynamicsKind::SingleIntegrator:
            if (sc.x0.size() != n) {
                fail("scenario: initial x has one entry per agent",
                     std::to_string(sc.x0.size()) + " entries for " + std::to_string(n));
            }
            break;
        case DynamicsKind::DoubleIntegrator:
            if (sc.r0.size() != n || sc.v0.size() != n) {
                fail("scenario: initial r, v have one entry per agent", "");
            }
            if (!(sc.trigger.gamma > 0.0)) fail("DITime: gamma > 0", "");
            break;
        case DynamicsKind::Linear: {
            if (!sc.linear) {
                fail("scenario: linear dynamics needs a linear block", "");
                break;
            }
            const auto& lin = *sc.linear;
            if (lin.A.rows() != lin.A.cols() || lin.B.rows() != lin.A.rows()) {
                fail("linear: A square and B row-compatible", "");
                break;
            }
            if (lin.x0.rows() != lin.A.rows() || lin.x0.cols() != n) {
                fail("linear: initial state is one n-vector per agent", "");
            }
            if (!is_controllable(lin.A, lin.B)) {
                fail("linear: (A, B) controllable", "controllability matrix rank deficient");
            }
            if (lin.c_override && *lin.c_override < 1.0 / spectral.lambda2 - 1e-9) {
                fail("linear: c >= 1/lambda2",
                     "c = " + std::to_string(*lin.c_override) +
                         ", 1/lambda2 = " + std::to_string(1.0 / spectral.lambda2));
            }
            if (!sc.channel.ideal()) {
                fail("linear: ideal channel required",
                     "model-based estimates are not defined under drops, delays, or "
                     "quantization here");
            }
            break;
        }
    }
    return report;
}

}  // namespace etcsim
