#include "cheegernet/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace cheegernet {

namespace {

std::string slot_name(const SlotRef& s) {
    std::ostringstream os;
    os << "[" << s.piece << "," << s.slot << "]";
    return os.str();
}

bool slot_in_range(const SlotRef& s, int pieces) {
    return s.piece >= 0 && s.piece < pieces && s.slot >= 0 && s.slot < kSlotsPerPiece;
}

// Union-find over pieces, used for connectivity checks.
class Dsu {
  public:
    explicit Dsu(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

  private:
    std::vector<int> parent_;
};

}  // namespace

std::vector<std::string> validate(const SurfaceSpec& spec) {
    std::vector<std::string> out;
    if (spec.pieces < 1) {
        out.push_back("surface needs at least one piece");
        return out;
    }
    const auto n_slots = static_cast<std::size_t>(spec.pieces) * kSlotsPerPiece;
    std::vector<int> uses(n_slots, 0);
    std::vector<int> cusp_uses(n_slots, 0);
    bool ranges_ok = true;

    for (std::size_t i = 0; i < spec.gluings.size(); ++i) {
        const auto& g = spec.gluings[i];
        bool ok = true;
        for (const auto& s : {g.a, g.b}) {
            if (!slot_in_range(s, spec.pieces)) {
                out.push_back("gluing " + std::to_string(i) + " refers to missing slot " + slot_name(s));
                ok = false;
                ranges_ok = false;
            }
        }
        if (!(std::isfinite(g.length) && g.length > 0.0)) {
            out.push_back("gluing " + std::to_string(i) + " has non-positive length");
        }
        if (!ok) continue;
        if (g.a == g.b) {
            out.push_back("matching not an involution: gluing " + std::to_string(i) +
                          " joins slot " + slot_name(g.a) + " to itself");
        }
        ++uses[static_cast<std::size_t>(g.a.piece * kSlotsPerPiece + g.a.slot)];
        if (!(g.a == g.b)) ++uses[static_cast<std::size_t>(g.b.piece * kSlotsPerPiece + g.b.slot)];
    }
    for (const auto& c : spec.cusps) {
        if (!slot_in_range(c, spec.pieces)) {
            out.push_back("cusp refers to missing slot " + slot_name(c));
            ranges_ok = false;
            continue;
        }
        ++cusp_uses[static_cast<std::size_t>(c.piece * kSlotsPerPiece + c.slot)];
    }
    for (int p = 0; p < spec.pieces; ++p) {
        for (int s = 0; s < kSlotsPerPiece; ++s) {
            const auto k = static_cast<std::size_t>(p * kSlotsPerPiece + s);
            const std::string name = slot_name({p, s});
            if (uses[k] > 1) {
                out.push_back("matching not an involution: slot " + name + " glued " +
                              std::to_string(uses[k]) + " times");
            }
            if (cusp_uses[k] > 1) out.push_back("slot " + name + " listed as cusp more than once");
            if (uses[k] > 0 && cusp_uses[k] > 0) out.push_back("slot " + name + " is both glued and a cusp");
            if (uses[k] == 0 && cusp_uses[k] == 0) out.push_back("slot " + name + " is neither glued nor a cusp");
        }
    }
    if (ranges_ok) {
        Dsu dsu(spec.pieces);
        for (const auto& g : spec.gluings) dsu.unite(g.a.piece, g.b.piece);
        const int root = dsu.find(0);
        for (int p = 1; p < spec.pieces; ++p) {
            if (dsu.find(p) != root) {
                out.push_back("pieces multigraph is disconnected (piece " + std::to_string(p) +
                              " unreachable from piece 0)");
                break;
            }
        }
    }
    std::vector<int> w = spec.window;
    std::sort(w.begin(), w.end());
    if (std::adjacent_find(w.begin(), w.end()) != w.end()) out.push_back("window lists a piece twice");
    for (int p : w) {
        if (p < 0 || p >= spec.pieces) out.push_back("window refers to missing piece " + std::to_string(p));
    }
    return out;
}

namespace {
std::string join_violations(const std::vector<std::string>& v) {
    std::string s = "invalid surface spec";
    for (const auto& x : v) s += "\n  - " + x;
    return s;
}
}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

std::vector<bool> find_bridges(int pieces, std::span<const Gluing> gluings) {
    const auto n = static_cast<std::size_t>(pieces);
    struct Arc {
        int to;
        int edge;
    };
    std::vector<std::vector<Arc>> adj(n);
    for (std::size_t e = 0; e < gluings.size(); ++e) {
        const int a = gluings[e].a.piece;
        const int b = gluings[e].b.piece;
        if (a == b) continue;
        adj[static_cast<std::size_t>(a)].push_back({b, static_cast<int>(e)});
        adj[static_cast<std::size_t>(b)].push_back({a, static_cast<int>(e)});
    }
    std::vector<bool> bridge(gluings.size(), false);
    std::vector<int> disc(n, -1), low(n, 0);
    int timer = 0;
    // Iterative DFS; skipping the entering edge id keeps parallel edges as cycles.
    struct Frame {
        int v;
        int parent_edge;
        std::size_t next;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> stack{{static_cast<int>(root), -1, 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto v = static_cast<std::size_t>(f.v);
            if (f.next < adj[v].size()) {
                const Arc arc = adj[v][f.next++];
                if (arc.edge == f.parent_edge) continue;
                const auto u = static_cast<std::size_t>(arc.to);
                if (disc[u] == -1) {
                    disc[u] = low[u] = timer++;
                    stack.push_back({arc.to, arc.edge, 0});
                } else {
                    low[v] = std::min(low[v], disc[u]);
                }
            } else {
                const int pe = f.parent_edge;
                stack.pop_back();
                if (!stack.empty()) {
                    const auto p = static_cast<std::size_t>(stack.back().v);
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] > disc[p]) bridge[static_cast<std::size_t>(pe)] = true;
                }
            }
        }
    }
    return bridge;
}

Surface::Surface(SurfaceSpec spec) : spec_(std::move(spec)) {
    auto violations = validate(spec_);
    if (!violations.empty()) throw ValidationError(std::move(violations));

    const auto n = static_cast<std::size_t>(spec_.pieces);
    slots_.resize(n * kSlotsPerPiece);
    neighbours_.resize(n);
    for (std::size_t i = 0; i < spec_.gluings.size(); ++i) {
        const auto& g = spec_.gluings[i];
        for (const auto& s : {g.a, g.b}) {
            slots_[static_cast<std::size_t>(s.piece * kSlotsPerPiece + s.slot)] =
                SlotInfo{SlotKind::Glued, static_cast<int>(i)};
        }
        if (g.a.piece != g.b.piece) {
            neighbours_[static_cast<std::size_t>(g.a.piece)].push_back(g.b.piece);
            neighbours_[static_cast<std::size_t>(g.b.piece)].push_back(g.a.piece);
        }
    }
    for (std::size_t i = 0; i < spec_.cusps.size(); ++i) {
        const auto& c = spec_.cusps[i];
        slots_[static_cast<std::size_t>(c.piece * kSlotsPerPiece + c.slot)] =
            SlotInfo{SlotKind::Cusp, static_cast<int>(i)};
    }
    for (auto& nb : neighbours_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    window_ = spec_.window;
    if (window_.empty()) {
        window_.resize(n);
        std::iota(window_.begin(), window_.end(), 0);
    }
    std::sort(window_.begin(), window_.end());
    in_window_.assign(n, 0);
    for (int p : window_) in_window_[static_cast<std::size_t>(p)] = 1;

    const auto bridges = find_bridges(spec_.pieces, spec_.gluings);
    separating_.assign(bridges.begin(), bridges.end());
}

ThickThin thick_thin(const Surface& surface, hypmath::MargulisParam eps) {
    ThickThin out{eps, {}, {}};
    const auto cusp = hypmath::cusp_collar(eps);
    for (int c = 0; c < surface.cusp_count(); ++c) {
        out.cusp_collars.push_back({c, cusp.lambda, cusp.boundary_length});
    }
    for (int id = 0; id < surface.gluing_count(); ++id) {
        const double l = surface.gluing(id).length;
        if (!(l < 2.0 * eps.value())) continue;
        ThinCollarRecord r;
        r.geodesic_id = id;
        r.core_length = l;
        r.half_width = hypmath::thin_half_width(l, eps);
        const double bl = hypmath::thin_boundary_length(l, eps);
        r.boundary_lengths[0] = bl;
        r.boundary_lengths[1] = bl;
        r.area = hypmath::thin_collar_area(l, eps);
        r.is_separating = surface.is_separating(id);
        out.thin_collars.push_back(r);
    }
    return out;
}

bool is_connected_subset(const Surface& surface, std::span<const int> pieces) {
    if (pieces.empty()) return false;
    std::vector<char> in(static_cast<std::size_t>(surface.piece_count()), 0);
    for (int p : pieces) in[static_cast<std::size_t>(p)] = 1;
    std::vector<char> seen(in.size(), 0);
    std::vector<int> stack{pieces.front()};
    seen[static_cast<std::size_t>(pieces.front())] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        ++reached;
        for (int u : surface.neighbours(v)) {
            const auto k = static_cast<std::size_t>(u);
            if (in[k] && !seen[k]) {
                seen[k] = 1;
                stack.push_back(u);
            }
        }
    }
    return reached == pieces.size();
}

GeodesicDomain domain_from_pieces(const Surface& surface, std::vector<int> pieces) {
    std::sort(pieces.begin(), pieces.end());
    pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
    if (pieces.empty()) throw std::invalid_argument("geodesic domain needs at least one piece");
    for (int p : pieces) {
        if (p < 0 || p >= surface.piece_count()) {
            throw std::invalid_argument("domain refers to missing piece " + std::to_string(p));
        }
    }
    if (!is_connected_subset(surface, pieces)) {
        throw std::invalid_argument("domain pieces are not connected");
    }
    std::vector<char> in(static_cast<std::size_t>(surface.piece_count()), 0);
    for (int p : pieces) in[static_cast<std::size_t>(p)] = 1;

    GeodesicDomain d;
    d.pieces = pieces;
    for (int id = 0; id < surface.gluing_count(); ++id) {
        const auto& g = surface.gluing(id);
        const bool ia = in[static_cast<std::size_t>(g.a.piece)] != 0;
        const bool ib = in[static_cast<std::size_t>(g.b.piece)] != 0;
        if (ia != ib) {
            d.boundary_geodesics.push_back(id);
            d.boundary_length += g.length;
        }
    }
    for (const auto& c : surface.spec().cusps) {
        if (in[static_cast<std::size_t>(c.piece)]) ++d.enclosed_cusps;
    }
    d.boundary_count = static_cast<int>(d.boundary_geodesics.size());
    const int k = static_cast<int>(pieces.size());
    const int twice_genus = k - d.boundary_count - d.enclosed_cusps + 2;
    if (twice_genus < 0 || twice_genus % 2 != 0) {
        throw std::logic_error("Euler characteristic of a union of pieces is inconsistent");
    }
    d.genus = twice_genus / 2;
    d.area = 2.0 * std::numbers::pi * k;
    if (d.euler_defect() < 1) {
        throw std::logic_error("union of pieces is simply or doubly connected");
    }
    return d;
}

std::size_t for_each_connected_subset(const Surface& surface, std::span<const int> allowed, int max_size,
                                      const std::function<bool(std::span<const int>)>& visit) {
    const auto n = static_cast<std::size_t>(surface.piece_count());
    if (max_size < 1) return 0;
    std::vector<char> ok(n, 0);
    for (int p : allowed) ok[static_cast<std::size_t>(p)] = 1;

    // ESU-style enumeration: every connected set is generated exactly once,
    // from its smallest piece, by extending only with exclusive neighbours.
    std::vector<int> in_set(n, 0);     // membership of the current set
    std::vector<int> near_set(n, 0);   // number of set members adjacent to the piece
    std::vector<int> current;
    std::vector<int> sorted;
    std::size_t visited = 0;
    bool stop = false;

    auto add = [&](int w) {
        current.push_back(w);
        in_set[static_cast<std::size_t>(w)] = 1;
        for (int u : surface.neighbours(w)) ++near_set[static_cast<std::size_t>(u)];
    };
    auto remove = [&](int w) {
        current.pop_back();
        in_set[static_cast<std::size_t>(w)] = 0;
        for (int u : surface.neighbours(w)) --near_set[static_cast<std::size_t>(u)];
    };

    std::function<void(std::vector<int>, int)> extend = [&](std::vector<int> ext, int root) {
        sorted = current;
        std::sort(sorted.begin(), sorted.end());
        ++visited;
        if (!visit(sorted)) {
            stop = true;
            return;
        }
        if (static_cast<int>(current.size()) >= max_size) return;
        while (!ext.empty() && !stop) {
            const int w = ext.back();
            ext.pop_back();
            std::vector<int> next = ext;
            for (int u : surface.neighbours(w)) {
                const auto k = static_cast<std::size_t>(u);
                if (u > root && ok[k] && !in_set[k] && near_set[k] == 0) next.push_back(u);
            }
            add(w);
            extend(std::move(next), root);
            remove(w);
        }
    };

    std::vector<int> order(allowed.begin(), allowed.end());
    std::sort(order.begin(), order.end());
    for (int v : order) {
        if (stop) break;
        std::vector<int> ext;
        for (int u : surface.neighbours(v)) {
            if (u > v && ok[static_cast<std::size_t>(u)]) ext.push_back(u);
        }
        add(v);
        extend(std::move(ext), v);
        remove(v);
    }
    return visited;
}

double lambda_x(const Surface& surface, hypmath::MargulisParam eps, double delta) {
    if (!(delta > 0.0 && delta < hypmath::delta1(eps))) {
        throw hypmath::DomainError("delta must satisfy 0 < delta < delta1(eps)");
    }
    double best = std::numeric_limits<double>::infinity();
    for (int id = 0; id < surface.gluing_count(); ++id) {
        const double l = surface.gluing(id).length;
        if (l < 2.0 * delta && !surface.is_separating(id)) best = std::min(best, l);
    }
    return best;
}

}  // namespace cheegernet
