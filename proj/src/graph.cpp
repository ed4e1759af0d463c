#include "etcsim/graph.hpp"

#include "etcsim/errors.hpp"
#include "etcsim/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace etcsim {

namespace {

void check_edge(int n, const WeightedEdge& e) {
    if (e.from < 1 || e.from > n || e.to < 1 || e.to > n) {
        throw GraphError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                         ") references a vertex outside 1.." + std::to_string(n));
    }
    if (e.from == e.to) {
        throw GraphError("self-loop at vertex " + std::to_string(e.from));
    }
    if (!(e.weight > 0.0)) {
        throw GraphError("nonpositive weight on edge (" + std::to_string(e.from) + "," +
                         std::to_string(e.to) + ")");
    }
}

// Reachability sweep from vertex 0 over a caller-chosen neighbor relation.
template <typename NeighborFn>
int reachable_count(int n, NeighborFn&& neighbors) {
    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int count = 1;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (int w : neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                frontier.push(w);
            }
        }
    }
    return count;
}

}  // namespace

Graph Graph::build(int n_vertices, const std::vector<WeightedEdge>& edges, bool undirected) {
    if (n_vertices < 1) {
        throw GraphError("graph needs at least one vertex");
    }
    Graph g;
    g.n_ = n_vertices;
    g.undirected_ = undirected;
    g.adjacency_ = Eigen::MatrixXd::Zero(n_vertices, n_vertices);

    std::set<std::pair<int, int>> listed;
    for (const auto& e : edges) {
        check_edge(n_vertices, e);
        if (!listed.insert({e.from, e.to}).second) {
            throw GraphError("duplicate edge (" + std::to_string(e.from) + "," +
                             std::to_string(e.to) + ")");
        }
        const int i = e.from - 1;
        const int j = e.to - 1;
        g.adjacency_(i, j) = e.weight;
        if (undirected) {
            if (listed.count({e.to, e.from})) {
                if (g.adjacency_(j, i) != e.weight) {
                    throw GraphError("asymmetric weights on undirected edge (" +
                                     std::to_string(e.from) + "," + std::to_string(e.to) + ")");
                }
            } else {
                g.adjacency_(j, i) = e.weight;
            }
        }
    }
    if (undirected) {
        // The stored edge list carries both directions.
        for (int i = 0; i < n_vertices; ++i) {
            for (int j = 0; j < n_vertices; ++j) {
                if (g.adjacency_(i, j) > 0.0) {
                    g.edges_.push_back({i + 1, j + 1, g.adjacency_(i, j)});
                }
            }
        }
    } else {
        g.edges_ = edges;
        std::sort(g.edges_.begin(), g.edges_.end(), [](const auto& a, const auto& b) {
            return std::tie(a.from, a.to) < std::tie(b.from, b.to);
        });
    }

    g.listen_.resize(n_vertices);
    g.recipients_.resize(n_vertices);
    for (int i = 0; i < n_vertices; ++i) {
        for (int j = 0; j < n_vertices; ++j) {
            if (g.adjacency_(i, j) > 0.0) {
                g.listen_[i].push_back(j);
                g.recipients_[j].push_back(i);
            }
        }
    }
    return g;
}

Eigen::MatrixXd Graph::laplacian() const {
    Eigen::MatrixXd lap = -adjacency_;
    for (int i = 0; i < n_; ++i) {
        lap(i, i) = adjacency_.row(i).sum();
    }
    return lap;
}

int Graph::max_degree() const {
    int d = 0;
    for (int i = 0; i < n_; ++i) {
        d = std::max(d, degree(i));
    }
    return d;
}

bool Graph::connected() const {
    if (n_ == 0) return false;
    auto neighbors = [this](int v) {
        std::vector<int> out;
        for (int w = 0; w < n_; ++w) {
            if (adjacency_(v, w) > 0.0 || adjacency_(w, v) > 0.0) out.push_back(w);
        }
        return out;
    };
    return reachable_count(n_, neighbors) == n_;
}

bool Graph::strongly_connected() const {
    if (n_ == 0) return false;
    auto fwd = [this](int v) { return listen_[v]; };
    auto rev = [this](int v) { return recipients_[v]; };
    return reachable_count(n_, fwd) == n_ && reachable_count(n_, rev) == n_;
}

bool Graph::is_weight_balanced(double tol) const {
    const Eigen::MatrixXd lap = laplacian();
    const Eigen::RowVectorXd colsum = Eigen::RowVectorXd::Ones(n_) * lap;
    return colsum.cwiseAbs().maxCoeff() <= tol;
}

std::string Graph::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["undirected"] = undirected_;
    auto edges = nlohmann::json::array();
    if (undirected_) {
        for (const auto& e : edges_) {
            if (e.from < e.to) edges.push_back({e.from, e.to, e.weight});
        }
    } else {
        for (const auto& e : edges_) {
            edges.push_back({e.from, e.to, e.weight});
        }
    }
    j["edges"] = std::move(edges);
    return j.dump();
}

Graph Graph::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("n") || !j.contains("edges")) {
        throw GraphError("graph JSON needs fields n, undirected, edges");
    }
    const int n = j.at("n").get<int>();
    const bool undirected = j.value("undirected", true);
    std::vector<WeightedEdge> edges;
    for (const auto& row : j.at("edges")) {
        if (!row.is_array() || row.size() != 3) {
            throw GraphError("graph edge rows must be [i, j, w]");
        }
        edges.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<double>()});
    }
    return build(n, edges, undirected);
}

SpectralSummary spectral_summary(const Graph& g) {
    if (g.undirected()) {
        if (!g.connected()) throw ConnectivityError("graph is not connected");
    } else {
        if (!g.strongly_connected()) throw ConnectivityError("digraph is not strongly connected");
    }
    const Eigen::MatrixXd lap = g.laplacian();
    const Eigen::MatrixXd sym = 0.5 * (lap + lap.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    if (eig.info() != Eigen::Success) {
        throw NumericsError("symmetric eigensolve failed");
    }
    SpectralSummary s;
    s.eigenvalues = eig.eigenvalues();
    s.lambda2 = g.size() > 1 ? s.eigenvalues(1) : 0.0;
    s.lambdaN = s.eigenvalues(g.size() - 1);
    s.laplacian_norm = lap.jacobiSvd().singularValues()(0);
    return s;
}

GraphKind graph_kind_from_string(const std::string& s) {
    if (s == "path") return GraphKind::Path;
    if (s == "cycle") return GraphKind::Cycle;
    if (s == "complete") return GraphKind::Complete;
    if (s == "random_connected") return GraphKind::RandomConnected;
    throw ConfigError("unknown graph kind: " + s);
}

std::string to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::Path: return "path";
        case GraphKind::Cycle: return "cycle";
        case GraphKind::Complete: return "complete";
        case GraphKind::RandomConnected: return "random_connected";
    }
    return "?";
}

Graph generate_graph(GraphKind kind, int n, std::uint64_t seed) {
    if (n < 2) throw ConfigError("graph generation needs n >= 2");
    std::vector<WeightedEdge> edges;
    switch (kind) {
        case GraphKind::Path:
            for (int i = 1; i < n; ++i) edges.push_back({i, i + 1, 1.0});
            break;
        case GraphKind::Cycle:
            for (int i = 1; i < n; ++i) edges.push_back({i, i + 1, 1.0});
            edges.push_back({n, 1, 1.0});
            break;
        case GraphKind::Complete:
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) edges.push_back({i, j, 1.0});
            break;
        case GraphKind::RandomConnected: {
            std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ull);
            constexpr int kMaxAttempts = 200;
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
                edges.clear();
                for (int i = 1; i <= n; ++i)
                    for (int j = i + 1; j <= n; ++j)
                        if (bernoulli(gen, 0.5)) edges.push_back({i, j, 1.0});
                Graph g = Graph::build(n, edges, true);
                if (g.connected()) return g;
            }
            throw NumericsError("random_connected: no connected sample in bounded attempts");
        }
    }
    return Graph::build(n, edges, true);
}

}  // namespace etcsim
