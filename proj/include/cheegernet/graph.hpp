#pragma once

// Undirected simple graph with optional edge weights, plus shortest-path
// helpers and the plain edge-list reader.

#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cheegernet {

struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

struct Arc {
    int to = 0;
    double w = 1.0;
};

class Graph {
  public:
    Graph() = default;

    /// Builds from an edge list. Self-loops are dropped; parallel edges keep
    /// the smallest weight. Adjacency lists are sorted by neighbour id.
    static Graph from_edges(int vertex_count, std::span<const Edge> edges, bool weighted = false);

    int vertex_count() const noexcept { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    bool weighted() const noexcept { return weighted_; }
    std::span<const Arc> arcs(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
    int degree(int v) const { return static_cast<int>(arcs(v).size()); }
    int max_degree() const;
    bool has_edge(int u, int v) const;

    /// Edges with u < v in canonical (u, v) order.
    std::vector<Edge> edges() const;

  private:
    std::vector<std::vector<Arc>> adj_;
    std::size_t edge_count_ = 0;
    bool weighted_ = false;
};

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Hop distances from `src` (kUnreachable where not reachable).
std::vector<double> bfs_distances(const Graph& g, int src);

/// Weighted distances from `src`; falls back to BFS for unweighted graphs.
std::vector<double> shortest_distances(const Graph& g, int src);

bool is_connected(const Graph& g);

/// Row-major all-pairs distance table.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

    int size() const noexcept { return n_; }
    double operator()(int i, int j) const {
        return d_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
    }
    double& at(int i, int j) {
        return d_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
    }
    std::span<double> row(int i) {
        return {d_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
    }

  private:
    int n_ = 0;
    std::vector<double> d_;
};

/// All-pairs shortest paths, one BFS/Dijkstra per source, spread over
/// worker threads (see worker_count()).
DistanceMatrix all_pairs_distances(const Graph& g);

/// Worker threads for data-parallel loops: CHEEGERNET_THREADS if set,
/// otherwise hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n) across worker threads.
void parallel_for(int n, const std::function<void(int)>& body);

class GraphFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Reads "u v [weight]" lines. Lines starting with '#' are comments; a
/// "# vertices N" comment fixes the vertex count, otherwise it is one more
/// than the largest id seen.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace cheegernet
