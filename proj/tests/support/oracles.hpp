#pragma once

// Seeded random inputs and brute-force oracles shared by the unit tests and
// the acceptance suite. Everything here is deliberately naive and independent
// of the library code it checks.

#include "cheegernet/graph.hpp"
#include "cheegernet/netgraph.hpp"
#include "cheegernet/surface.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using namespace cheegernet;

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Connected spec with 1..max_pieces pieces. Lengths mix very short (below
/// 2 delta), thin (below 2 eps) and thick geodesics; self-gluings occur.
inline SurfaceSpec random_spec(std::mt19937_64& rng, int max_pieces, double eps, double delta) {
    SurfaceSpec spec;
    spec.pieces = uniform_int(rng, 1, max_pieces);
    auto length = [&] {
        switch (uniform_int(rng, 0, 2)) {
            case 0: return uniform_real(rng, 0.05, 1.95) * delta;
            case 1: return uniform_real(rng, 2.0 * delta, 2.0 * eps);
            default: return uniform_real(rng, 2.0 * eps, 3.0);
        }
    };
    std::vector<SlotRef> free;
    for (int s = 0; s < kSlotsPerPiece; ++s) free.push_back({0, s});
    for (int p = 1; p < spec.pieces; ++p) {
        const auto k = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(free.size()) - 1));
        const SlotRef old = free[k];
        free.erase(free.begin() + static_cast<std::ptrdiff_t>(k));
        const int s = uniform_int(rng, 0, 2);
        spec.gluings.push_back({old, {p, s}, length()});
        for (int t = 0; t < kSlotsPerPiece; ++t) {
            if (t != s) free.push_back({p, t});
        }
    }
    std::shuffle(free.begin(), free.end(), rng);
    while (!free.empty()) {
        if (free.size() >= 2 && uniform_int(rng, 0, 2) == 0) {
            const SlotRef a = free.back();
            free.pop_back();
            const SlotRef b = free.back();
            free.pop_back();
            spec.gluings.push_back({a, b, length()});
        } else {
            spec.cusps.push_back(free.back());
            free.pop_back();
        }
    }
    return spec;
}

/// Random connected graph on n vertices: a random spanning tree plus extra
/// edges with probability p.
inline Graph random_connected_graph(std::mt19937_64& rng, int n, double p) {
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) edges.push_back({uniform_int(rng, 0, v - 1), v, 1.0});
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (uniform_real(rng, 0.0, 1.0) < p) edges.push_back({u, v, 1.0});
        }
    }
    return Graph::from_edges(n, edges);
}

inline Graph random_tree(std::mt19937_64& rng, int n) { return random_connected_graph(rng, n, 0.0); }

inline Graph cycle_graph(int n) {
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 1.0});
    return Graph::from_edges(n, edges);
}

inline Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
    return Graph::from_edges(n, edges);
}

/// Floyd-Warshall over the edge list.
inline std::vector<std::vector<double>> floyd(const Graph& g) {
    const int n = g.vertex_count();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), inf));
    for (int v = 0; v < n; ++v) d[v][v] = 0.0;
    for (const auto& e : g.edges()) {
        const double w = g.weighted() ? e.w : 1.0;
        d[e.u][e.v] = std::min(d[e.u][e.v], w);
        d[e.v][e.u] = std::min(d[e.v][e.u], w);
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

/// max over ordered (x, y, z, o) of min{(x|z)_o, (z|y)_o} - (x|y)_o.
inline double delta_by_products(const std::vector<std::vector<double>>& d) {
    const auto n = d.size();
    auto gp = [&](std::size_t x, std::size_t y, std::size_t o) { return 0.5 * (d[x][o] + d[y][o] - d[x][y]); };
    double best = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                for (std::size_t o = 0; o < n; ++o)
                    best = std::max(best, std::min(gp(x, z, o), gp(z, y, o)) - gp(x, y, o));
    return best;
}

/// Vertices at distance exactly 1 from the set, by scanning every vertex.
inline std::set<int> brute_boundary(const Graph& g, const std::set<int>& a) {
    std::set<int> out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (a.count(v)) continue;
        for (int u : a) {
            if (g.has_edge(u, v)) {
                out.insert(v);
                break;
            }
        }
    }
    return out;
}

struct Ratio {
    std::size_t boundary = 0;
    std::size_t size = 0;
};

/// Exact minimum of |dA|/|A| over every non-empty subset A of `space` with
/// |A| <= max_card.
inline Ratio brute_cheeger(const Graph& g, const std::vector<int>& space, std::size_t max_card) {
    Ratio best{1, 0};
    const std::size_t k = space.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        std::set<int> a;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1) a.insert(space[i]);
        }
        if (a.size() > max_card) continue;
        const std::size_t b = brute_boundary(g, a).size();
        if (best.size == 0 || b * best.size < best.boundary * a.size()) best = {b, a.size()};
    }
    return best;
}

/// Euler characteristic of a union of pants, each cut into 6 vertices,
/// 9 edges and 2 hexagons (two vertices and two edges per boundary circle,
/// three seams), with glued circles identified vertex by vertex.
struct CellCount {
    int euler = 0;
    int boundary_circles = 0;  // circles of the union left unglued, cusps included
};

inline CellCount pants_complex(const Surface& s, const std::vector<int>& pieces) {
    std::vector<char> in(static_cast<std::size_t>(s.piece_count()), 0);
    for (int p : pieces) in[static_cast<std::size_t>(p)] = 1;
    const int n = static_cast<int>(pieces.size());
    // Circle c of piece index i owns vertices 6i+2c, 6i+2c+1 and edges 9i+2c, 9i+2c+1.
    std::vector<int> vparent(static_cast<std::size_t>(6 * n)), eparent(static_cast<std::size_t>(9 * n));
    std::iota(vparent.begin(), vparent.end(), 0);
    std::iota(eparent.begin(), eparent.end(), 0);
    auto find = [](std::vector<int>& par, int x) {
        while (par[static_cast<std::size_t>(x)] != x) x = par[static_cast<std::size_t>(x)];
        return x;
    };
    auto unite = [&](std::vector<int>& par, int a, int b) { par[static_cast<std::size_t>(find(par, a))] = find(par, b); };
    std::vector<int> index(static_cast<std::size_t>(s.piece_count()), -1);
    for (int i = 0; i < n; ++i) index[static_cast<std::size_t>(pieces[static_cast<std::size_t>(i)])] = i;
    CellCount out;
    for (int i = 0; i < n; ++i) {
        const int p = pieces[static_cast<std::size_t>(i)];
        for (int c = 0; c < 3; ++c) {
            const auto& info = s.slot(p, c);
            if (info.kind == SlotKind::Cusp) {
                ++out.boundary_circles;
                continue;
            }
            const auto& g = s.gluing(info.index);
            const SlotRef other = (g.a == SlotRef{p, c}) ? g.b : g.a;
            if (!in[static_cast<std::size_t>(other.piece)]) {
                ++out.boundary_circles;
                continue;
            }
            const int j = index[static_cast<std::size_t>(other.piece)];
            for (int t = 0; t < 2; ++t) {
                unite(vparent, 6 * i + 2 * c + t, 6 * j + 2 * other.slot + t);
                unite(eparent, 9 * i + 2 * c + t, 9 * j + 2 * other.slot + t);
            }
        }
    }
    std::set<int> vs, es;
    for (int v = 0; v < 6 * n; ++v) vs.insert(find(vparent, v));
    for (int e = 0; e < 9 * n; ++e) es.insert(find(eparent, e));
    out.euler = static_cast<int>(vs.size()) - static_cast<int>(es.size()) + 2 * n;
    return out;
}

/// S_G recomputed from vertex tags alone.
inline std::set<int> tag_s_g(const Surface& s, const NetGraph& net, const std::vector<int>& pieces) {
    std::set<int> g(pieces.begin(), pieces.end());
    std::set<int> out;
    for (std::size_t v = 0; v < net.tags.size(); ++v) {
        const VertexTag& t = net.tags[v];
        bool take = false;
        switch (t.kind) {
            case VertexKind::Hub: take = g.count(t.piece) > 0; break;
            case VertexKind::CuspW: take = g.count(s.spec().cusps[static_cast<std::size_t>(t.special)].piece) > 0; break;
            case VertexKind::ThinV: {
                const auto& gl = s.gluing(t.special);
                take = g.count(gl.a.piece) > 0 || g.count(gl.b.piece) > 0;
                break;
            }
            case VertexKind::Ring: {
                const auto& info = s.slot(t.piece, t.slot);
                if (info.kind == SlotKind::Cusp || net.in_j_delta(info.index)) {
                    take = g.count(t.piece) > 0;
                } else {
                    const auto& gl = s.gluing(info.index);
                    take = g.count(gl.a.piece) > 0 && g.count(gl.b.piece) > 0;
                }
                break;
            }
        }
        if (take) out.insert(static_cast<int>(v));
    }
    return out;
}

}  // namespace oracle
