#include "cheegernet/netgraph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

namespace cheegernet {

std::string to_string(VertexKind k) {
    switch (k) {
        case VertexKind::Hub: return "hub";
        case VertexKind::Ring: return "ring";
        case VertexKind::CuspW: return "cusp_w";
        case VertexKind::ThinV: return "thin_v";
    }
    return "?";
}

std::string describe(const VertexTag& t) {
    std::ostringstream os;
    os << to_string(t.kind);
    switch (t.kind) {
        case VertexKind::Hub: os << ' ' << t.piece; break;
        case VertexKind::Ring: os << ' ' << t.piece << ' ' << t.slot << ' ' << t.sample; break;
        case VertexKind::CuspW:
        case VertexKind::ThinV: os << ' ' << t.special; break;
    }
    return os.str();
}

void NetBuildParams::validate() const {
    if (!(eps > 0.0 && eps < hypmath::kArcsinhOne)) {
        throw ParameterError("eps must lie in (0, arcsinh 1), got " + std::to_string(eps));
    }
    const double d1 = hypmath::delta1(hypmath::MargulisParam(eps));
    if (!(delta > 0.0 && delta < d1)) {
        std::ostringstream os;
        os << std::setprecision(17) << "delta must lie in (0, delta1(eps)) = (0, " << d1 << "), got " << delta;
        throw ParameterError(os.str());
    }
    if (density < 1) throw ParameterError("density must be a positive integer");
}

namespace {

int ceil_count(double x) {
    const double c = std::ceil(x);
    return std::max(1, static_cast<int>(c));
}

std::vector<int> strided(std::span<const int> ring, int cap) {
    const auto k = static_cast<int>(ring.size());
    if (k <= cap) return {ring.begin(), ring.end()};
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(cap));
    for (int i = 0; i < cap; ++i) {
        const auto idx = static_cast<std::int64_t>(i) * k / cap;
        out.push_back(ring[static_cast<std::size_t>(idx)]);
    }
    return out;
}

void ring_edges(std::span<const int> ring, double w, std::vector<Edge>& edges) {
    const std::size_t k = ring.size();
    if (k < 2) return;
    if (k == 2) {
        edges.push_back({ring[0], ring[1], w});
        return;
    }
    for (std::size_t i = 0; i < k; ++i) edges.push_back({ring[i], ring[(i + 1) % k], w});
}

}  // namespace

int spoke_cap(double delta, int density) { return ceil_count(2.0 * density / delta); }

int packing_constant(double delta, int density) { return std::max(4, 3 * spoke_cap(delta, density)); }

int degree_bound(double eps, double delta, int density) {
    NetBuildParams{eps, delta, density}.validate();
    const int mu = packing_constant(delta, density);
    const double s = std::sinh(eps);
    const int cusp = ceil_count(2.0 * density * s / delta) * mu;
    const int thin = ceil_count(4.0 * density * s / delta) * mu;
    return std::max({mu + 1, cusp, thin});
}

NetGraph build_net(const Surface& surface, const NetBuildParams& params) {
    params.validate();
    const hypmath::MargulisParam eps(params.eps);
    const double delta = params.delta;
    const int density = params.density;
    const int cap = spoke_cap(delta, density);
    const double cusp_len = hypmath::cusp_collar(eps).boundary_length;

    NetGraph net;
    net.spec = surface.spec();
    net.params = params;
    const int pieces = surface.piece_count();
    net.hub.assign(static_cast<std::size_t>(pieces), -1);
    net.rings.resize(static_cast<std::size_t>(pieces));
    net.spokes.resize(static_cast<std::size_t>(pieces));
    net.ring_length.assign(static_cast<std::size_t>(pieces) * kSlotsPerPiece, 0.0);
    net.thin_v.assign(static_cast<std::size_t>(surface.gluing_count()), -1);
    net.cusp_w.assign(static_cast<std::size_t>(surface.cusp_count()), -1);

    std::vector<char> short_gluing(static_cast<std::size_t>(surface.gluing_count()), 0);
    for (int g = 0; g < surface.gluing_count(); ++g) {
        short_gluing[static_cast<std::size_t>(g)] = surface.gluing(g).length < 2.0 * delta;
    }

    std::vector<Edge> edges;
    std::vector<std::vector<int>> shared(static_cast<std::size_t>(surface.gluing_count()));
    auto new_vertex = [&](VertexTag t) {
        net.tags.push_back(t);
        return static_cast<int>(net.tags.size()) - 1;
    };
    auto new_ring = [&](int p, int s, double len) {
        const int k = ceil_count(density * len / delta);
        std::vector<int> ring;
        for (int i = 0; i < k; ++i) ring.push_back(new_vertex({VertexKind::Ring, p, s, i, -1}));
        ring_edges(ring, 1.0, edges);
        return ring;
    };

    for (int p = 0; p < pieces; ++p) {
        net.hub[static_cast<std::size_t>(p)] = new_vertex({VertexKind::Hub, p, -1, -1, -1});
        for (int s = 0; s < kSlotsPerPiece; ++s) {
            const SlotInfo& info = surface.slot(p, s);
            auto& ring = net.rings[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)];
            double& len = net.ring_length[static_cast<std::size_t>(p * kSlotsPerPiece + s)];
            if (info.kind == SlotKind::Cusp) {
                len = cusp_len;
                ring = new_ring(p, s, len);
            } else if (short_gluing[static_cast<std::size_t>(info.index)]) {
                len = hypmath::thin_boundary_length(surface.gluing(info.index).length, eps);
                ring = new_ring(p, s, len);
            } else {
                len = surface.gluing(info.index).length;
                auto& sh = shared[static_cast<std::size_t>(info.index)];
                if (sh.empty()) sh = new_ring(p, s, len);
                ring = sh;
            }
        }
    }

    for (int p = 0; p < pieces; ++p) {
        const int h = net.hub[static_cast<std::size_t>(p)];
        for (int s = 0; s < kSlotsPerPiece; ++s) {
            const auto& ring = net.rings[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)];
            auto sp = strided(ring, cap);
            for (int v : sp) edges.push_back({h, v, 1.0});
            net.spokes[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)] = std::move(sp);
        }
    }

    for (int c = 0; c < surface.cusp_count(); ++c) {
        const SlotRef at = surface.spec().cusps[static_cast<std::size_t>(c)];
        const int w = new_vertex({VertexKind::CuspW, -1, -1, -1, c});
        net.cusp_w[static_cast<std::size_t>(c)] = w;
        for (int v : net.rings[static_cast<std::size_t>(at.piece)][static_cast<std::size_t>(at.slot)]) {
            edges.push_back({w, v, 1.0});
        }
    }
    for (int g = 0; g < surface.gluing_count(); ++g) {
        if (!short_gluing[static_cast<std::size_t>(g)]) continue;
        const Gluing& gl = surface.gluing(g);
        const int v = new_vertex({VertexKind::ThinV, -1, -1, -1, g});
        net.thin_v[static_cast<std::size_t>(g)] = v;
        for (const SlotRef side : {gl.a, gl.b}) {
            for (int u : net.rings[static_cast<std::size_t>(side.piece)][static_cast<std::size_t>(side.slot)]) {
                edges.push_back({v, u, 1.0});
            }
        }
    }

    net.graph = Graph::from_edges(static_cast<int>(net.tags.size()), edges);
    return net;
}

BoundaryVertexSet boundary_vertex_set(const NetGraph& net, const GeodesicDomain& domain) {
    const int pieces = net.spec.pieces;
    std::vector<char> in_g(static_cast<std::size_t>(pieces), 0);
    if (domain.pieces.empty()) throw std::invalid_argument("empty domain");
    for (int p : domain.pieces) {
        if (p < 0 || p >= pieces) throw std::invalid_argument("domain does not belong to this net graph");
        in_g[static_cast<std::size_t>(p)] = 1;
    }
    auto inside = [&](SlotRef r) { return in_g[static_cast<std::size_t>(r.piece)] != 0; };
    auto ring_of = [&](SlotRef r) -> const std::vector<int>& {
        return net.rings[static_cast<std::size_t>(r.piece)][static_cast<std::size_t>(r.slot)];
    };
    auto spokes_of = [&](SlotRef r) -> const std::vector<int>& {
        return net.spokes[static_cast<std::size_t>(r.piece)][static_cast<std::size_t>(r.slot)];
    };

    BoundaryVertexSet out;
    for (int p : domain.pieces) out.s_g.push_back(net.hub[static_cast<std::size_t>(p)]);
    for (std::size_t c = 0; c < net.spec.cusps.size(); ++c) {
        const SlotRef at = net.spec.cusps[c];
        if (!inside(at)) continue;
        const auto& ring = ring_of(at);
        out.s_g.insert(out.s_g.end(), ring.begin(), ring.end());
        out.s_g.push_back(net.cusp_w[c]);
    }
    for (std::size_t g = 0; g < net.spec.gluings.size(); ++g) {
        const Gluing& gl = net.spec.gluings[g];
        const bool ia = inside(gl.a);
        const bool ib = inside(gl.b);
        if (!ia && !ib) continue;
        if (net.in_j_delta(static_cast<int>(g))) {
            out.s_g.push_back(net.thin_v[g]);
            for (const auto& [side, in] : {std::pair{gl.a, ia}, std::pair{gl.b, ib}}) {
                const auto& ring = ring_of(side);
                if (in) {
                    out.s_g.insert(out.s_g.end(), ring.begin(), ring.end());
                } else {
                    out.thin_part.insert(out.thin_part.end(), ring.begin(), ring.end());
                }
            }
        } else if (ia && ib) {
            const auto& ring = ring_of(gl.a);
            out.s_g.insert(out.s_g.end(), ring.begin(), ring.end());
        } else {
            const auto& sp = spokes_of(ia ? gl.a : gl.b);
            out.d2d_part.insert(out.d2d_part.end(), sp.begin(), sp.end());
        }
    }
    for (auto* v : {&out.s_g, &out.d2d_part, &out.thin_part}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    std::set_union(out.d2d_part.begin(), out.d2d_part.end(), out.thin_part.begin(), out.thin_part.end(),
                   std::back_inserter(out.boundary));
    return out;
}

QuotientMesh build_quotient_mesh(const Surface& surface, const NetBuildParams& params, int refinement) {
    if (refinement < 1) throw ParameterError("refinement must be a positive integer");
    const NetGraph net = build_net(surface, params);
    const int pieces = surface.piece_count();
    const int n_net = net.graph.vertex_count();

    QuotientMesh mesh;
    mesh.net_to_mesh.assign(static_cast<std::size_t>(n_net), -1);
    mesh.hub_radius.assign(static_cast<std::size_t>(pieces), 1.0);
    std::vector<Edge> edges;
    int next = 0;
    std::vector<int> mesh_hub(static_cast<std::size_t>(pieces), -1);

    for (int p = 0; p < pieces; ++p) {
        double shortest = hypmath::kArcsinhOne;
        bool glued = false;
        for (int s = 0; s < kSlotsPerPiece; ++s) {
            const SlotInfo& info = surface.slot(p, s);
            if (info.kind != SlotKind::Glued) continue;
            const double l = surface.gluing(info.index).length;
            shortest = glued ? std::min(shortest, l) : l;
            glued = true;
        }
        if (glued) {
            mesh.hub_radius[static_cast<std::size_t>(p)] =
                std::clamp(hypmath::collar_width(shortest), params.delta, 1.0);
        }
    }

    for (int p = 0; p < pieces; ++p) {
        const int hub = net.hub[static_cast<std::size_t>(p)];
        mesh_hub[static_cast<std::size_t>(p)] = next;
        mesh.net_to_mesh[static_cast<std::size_t>(hub)] = next++;
        for (int s = 0; s < kSlotsPerPiece; ++s) {
            const auto& ring = net.rings[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)];
            if (mesh.net_to_mesh[static_cast<std::size_t>(ring.front())] >= 0) continue;
            const int k = static_cast<int>(ring.size());
            const int m = refinement * k;
            const double len = net.ring_length[static_cast<std::size_t>(p * kSlotsPerPiece + s)];
            std::vector<int> samples(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) samples[static_cast<std::size_t>(i)] = next++;
            ring_edges(samples, len / m, edges);
            for (int i = 0; i < k; ++i) {
                mesh.net_to_mesh[static_cast<std::size_t>(ring[static_cast<std::size_t>(i)])] =
                    samples[static_cast<std::size_t>(refinement * i)];
            }
            const SlotInfo& info = surface.slot(p, s);
            if (info.kind == SlotKind::Glued && net.in_j_delta(info.index)) {
                const Gluing& gl = surface.gluing(info.index);
                const SlotRef other = (gl.a == SlotRef{p, s}) ? gl.b : gl.a;
                const auto& twin = net.rings[static_cast<std::size_t>(other.piece)][static_cast<std::size_t>(other.slot)];
                if (twin.size() != ring.size()) throw std::logic_error("thin rings of one collar differ in size");
                for (int i = 0; i < k; ++i) {
                    mesh.net_to_mesh[static_cast<std::size_t>(twin[static_cast<std::size_t>(i)])] =
                        samples[static_cast<std::size_t>(refinement * i)];
                }
            }
        }
    }
    for (int p = 0; p < pieces; ++p) {
        const double rho = mesh.hub_radius[static_cast<std::size_t>(p)];
        for (int s = 0; s < kSlotsPerPiece; ++s) {
            for (int v : net.spokes[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)]) {
                edges.push_back({mesh_hub[static_cast<std::size_t>(p)], mesh.net_to_mesh[static_cast<std::size_t>(v)], rho});
            }
        }
    }
    mesh.graph = Graph::from_edges(next, edges, true);
    return mesh;
}

std::vector<double> qi_alpha_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 28; ++i) grid.push_back(1.0 + 0.25 * i);
    return grid;
}

namespace {

std::vector<double> multi_source_distances(const Graph& g, std::span<const int> sources) {
    std::vector<double> dist(static_cast<std::size_t>(g.vertex_count()), kUnreachable);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int s : sources) {
        dist[static_cast<std::size_t>(s)] = 0.0;
        pq.push({0.0, s});
    }
    while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[static_cast<std::size_t>(v)]) continue;
        for (const auto& a : g.arcs(v)) {
            const double nd = d + (g.weighted() ? a.w : 1.0);
            auto& cur = dist[static_cast<std::size_t>(a.to)];
            if (nd < cur) {
                cur = nd;
                pq.push({nd, a.to});
            }
        }
    }
    return dist;
}

}  // namespace

QiEstimate estimate_qi_constants(const Graph& a, const Graph& b, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != a.vertex_count()) {
        throw std::invalid_argument("map must have one entry per vertex of the source graph");
    }
    std::vector<int> domain;
    std::vector<int> image;
    for (int v = 0; v < a.vertex_count(); ++v) {
        const int fv = map[static_cast<std::size_t>(v)];
        if (fv < 0) continue;
        if (fv >= b.vertex_count()) throw std::out_of_range("map sends a vertex outside the target graph");
        domain.push_back(v);
        image.push_back(fv);
    }
    if (domain.empty()) throw std::invalid_argument("map has an empty domain");
    const auto da = all_pairs_distances(a);
    const auto db = all_pairs_distances(b);
    const auto grid = qi_alpha_grid();
    std::vector<double> beta(grid.size(), 0.0);
    QiEstimate out;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        for (std::size_t j = i + 1; j < domain.size(); ++j) {
            const double x = da(domain[i], domain[j]);
            const double y = db(image[i], image[j]);
            if (x == kUnreachable || y == kUnreachable) {
                throw std::invalid_argument("unreachable pair; both graphs must be connected");
            }
            ++out.pairs;
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const double al = grid[k];
                beta[k] = std::max({beta[k], x / al - y, y - al * x});
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out.table.push_back({grid[k], beta[k]});
        if (grid[k] + beta[k] < grid[best] + beta[best] - 1e-12) best = k;
    }
    out.alpha = grid[best];
    out.beta = beta[best];

    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    const auto reach = multi_source_distances(b, image);
    for (double d : reach) {
        if (d == kUnreachable) throw std::invalid_argument("target graph is disconnected");
        out.fullness = std::max(out.fullness, d);
    }
    return out;
}

void write_net_edge_list(std::ostream& out, const NetGraph& net) {
    out << "# vertices " << net.graph.vertex_count() << "\n";
    for (std::size_t v = 0; v < net.tags.size(); ++v) out << "# v " << v << ' ' << describe(net.tags[v]) << "\n";
    for (const auto& e : net.graph.edges()) out << e.u << ' ' << e.v << "\n";
}

void write_net_dot(std::ostream& out, const NetGraph& net) {
    out << "graph net {\n";
    for (std::size_t v = 0; v < net.tags.size(); ++v) {
        const auto& t = net.tags[v];
        out << "  " << v << " [label=\"" << describe(t) << "\"";
        if (t.kind == VertexKind::CuspW) out << ", shape=box";
        if (t.kind == VertexKind::ThinV) out << ", shape=diamond";
        if (t.kind == VertexKind::Hub) out << ", shape=doublecircle";
        out << "];\n";
    }
    for (const auto& e : net.graph.edges()) out << "  " << e.u << " -- " << e.v << ";\n";
    out << "}\n";
}

}  // namespace cheegernet
