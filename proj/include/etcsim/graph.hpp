#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace etcsim {

struct WeightedEdge {
    int from = 0;  // 1-based vertex ids at the interface
    int to = 0;
    double weight = 1.0;
};

/// Weighted communication digraph. Undirected graphs are stored as symmetric
/// edge pairs. Immutable after construction, safe to share across runs.
class Graph {
public:
    Graph() = default;

    /// Validates and builds the adjacency structure. For undirected graphs a
    /// single (i,j,w) entry implies the reverse edge; listing both directions
    /// with different weights is an error.
    static Graph build(int n_vertices, const std::vector<WeightedEdge>& edges, bool undirected);

    int size() const { return n_; }
    bool undirected() const { return undirected_; }
    const Eigen::MatrixXd& adjacency() const { return adjacency_; }
    const std::vector<WeightedEdge>& edges() const { return edges_; }

    /// L = D_out - W. Every row sums to zero.
    Eigen::MatrixXd laplacian() const;

    /// Agents whose broadcasts drive agent i's control law: the neighbors
    /// N_i for undirected graphs, the out-neighbors N_i^out for digraphs.
    /// 0-based, ascending.
    const std::vector<int>& listen_set(int i) const { return listen_[i]; }
    /// Agents that receive agent i's broadcasts (reverse of listen_set).
    const std::vector<int>& recipients(int i) const { return recipients_[i]; }

    double weight(int i, int j) const { return adjacency_(i, j); }
    int degree(int i) const { return static_cast<int>(listen_[i].size()); }
    int max_degree() const;

    bool connected() const;           // ignores edge directions
    bool strongly_connected() const;  // directed reachability both ways
    bool is_weight_balanced(double tol = 1e-12) const;

    std::string to_json() const;
    static Graph from_json(const std::string& text);

private:
    int n_ = 0;
    bool undirected_ = true;
    Eigen::MatrixXd adjacency_;
    std::vector<WeightedEdge> edges_;
    std::vector<std::vector<int>> listen_;
    std::vector<std::vector<int>> recipients_;
};

/// Spectral quantities of Sym(L) = (L + L^T)/2 plus the spectral norm of L.
struct SpectralSummary {
    double lambda2 = 0.0;
    double lambdaN = 0.0;
    double laplacian_norm = 0.0;
    Eigen::VectorXd eigenvalues;  // ascending
};

/// Dense symmetric eigensolve on Sym(L). Requires the graph to be connected
/// (undirected) or strongly connected (directed); throws ConnectivityError
/// otherwise.
SpectralSummary spectral_summary(const Graph& g);

enum class GraphKind { Path, Cycle, Complete, RandomConnected };

GraphKind graph_kind_from_string(const std::string& s);
std::string to_string(GraphKind kind);

/// Deterministic for fixed (kind, n, seed). random_connected draws each pair
/// with probability 1/2 and retries (bounded) until connected; weights are 1.
Graph generate_graph(GraphKind kind, int n, std::uint64_t seed = 0);

}  // namespace etcsim
