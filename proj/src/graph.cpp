#include "cheegernet/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <queue>
#include <sstream>
#include <thread>

namespace cheegernet {

Graph Graph::from_edges(int vertex_count, std::span<const Edge> edges, bool weighted) {
    if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
    Graph g;
    g.weighted_ = weighted;
    g.adj_.resize(static_cast<std::size_t>(vertex_count));
    for (const auto& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count) {
            throw std::out_of_range("edge endpoint out of range");
        }
        if (e.u == e.v) continue;
        const double w = weighted ? e.w : 1.0;
        g.adj_[static_cast<std::size_t>(e.u)].push_back({e.v, w});
        g.adj_[static_cast<std::size_t>(e.v)].push_back({e.u, w});
    }
    for (auto& list : g.adj_) {
        std::sort(list.begin(), list.end(), [](const Arc& a, const Arc& b) {
            return a.to != b.to ? a.to < b.to : a.w < b.w;
        });
        list.erase(std::unique(list.begin(), list.end(), [](const Arc& a, const Arc& b) { return a.to == b.to; }),
                   list.end());
        g.edge_count_ += list.size();
    }
    g.edge_count_ /= 2;
    return g;
}

int Graph::max_degree() const {
    int m = 0;
    for (const auto& list : adj_) m = std::max(m, static_cast<int>(list.size()));
    return m;
}

bool Graph::has_edge(int u, int v) const {
    const auto list = arcs(u);
    return std::binary_search(list.begin(), list.end(), Arc{v, 0.0},
                              [](const Arc& a, const Arc& b) { return a.to < b.to; });
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int u = 0; u < vertex_count(); ++u) {
        for (const auto& a : arcs(u)) {
            if (u < a.to) out.push_back({u, a.to, a.w});
        }
    }
    return out;
}

std::vector<double> bfs_distances(const Graph& g, int src) {
    std::vector<double> dist(static_cast<std::size_t>(g.vertex_count()), kUnreachable);
    std::vector<int> queue{src};
    dist[static_cast<std::size_t>(src)] = 0.0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        const double next = dist[static_cast<std::size_t>(v)] + 1.0;
        for (const auto& a : g.arcs(v)) {
            auto& d = dist[static_cast<std::size_t>(a.to)];
            if (d == kUnreachable) {
                d = next;
                queue.push_back(a.to);
            }
        }
    }
    return dist;
}

std::vector<double> shortest_distances(const Graph& g, int src) {
    if (!g.weighted()) return bfs_distances(g, src);
    std::vector<double> dist(static_cast<std::size_t>(g.vertex_count()), kUnreachable);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[static_cast<std::size_t>(src)] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[static_cast<std::size_t>(v)]) continue;
        for (const auto& a : g.arcs(v)) {
            const double nd = d + a.w;
            auto& cur = dist[static_cast<std::size_t>(a.to)];
            if (nd < cur) {
                cur = nd;
                pq.push({nd, a.to});
            }
        }
    }
    return dist;
}

bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) return true;
    const auto d = bfs_distances(g, 0);
    return std::none_of(d.begin(), d.end(), [](double x) { return x == kUnreachable; });
}

int worker_count() {
    if (const char* env = std::getenv("CHEEGERNET_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, const std::function<void(int)>& body) {
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

DistanceMatrix all_pairs_distances(const Graph& g) {
    DistanceMatrix m(g.vertex_count());
    parallel_for(g.vertex_count(), [&](int s) {
        const auto d = shortest_distances(g, s);
        std::copy(d.begin(), d.end(), m.row(s).begin());
    });
    return m;
}

Graph read_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    int declared = -1;
    int max_id = -1;
    bool weighted = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first[0] == '#') {
            std::string key = first.substr(1);
            if (key.empty()) ls >> key;
            if (key == "vertices" && (!(ls >> declared) || declared < 0)) {
                throw GraphFormatError("bad vertex count on line " + std::to_string(line_no));
            }
            continue;
        }
        Edge e;
        try {
            std::size_t used = 0;
            e.u = std::stoi(first, &used);
            if (used != first.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw GraphFormatError("bad vertex id on line " + std::to_string(line_no));
        }
        if (!(ls >> e.v)) throw GraphFormatError("missing second endpoint on line " + std::to_string(line_no));
        if (ls >> e.w) weighted = true;
        if (e.u < 0 || e.v < 0) throw GraphFormatError("negative vertex id on line " + std::to_string(line_no));
        max_id = std::max({max_id, e.u, e.v});
        edges.push_back(e);
    }
    const int n = declared >= 0 ? declared : max_id + 1;
    if (max_id >= n) throw GraphFormatError("edge refers to vertex beyond the declared count");
    return Graph::from_edges(n, edges, weighted);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphFormatError("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "# vertices " << g.vertex_count() << "\n";
    out << std::setprecision(17);
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v;
        if (g.weighted()) out << ' ' << e.w;
        out << '\n';
    }
}

}  // namespace cheegernet
