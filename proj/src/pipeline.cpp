#include "cheegernet/pipeline.hpp"

#include <algorithm>
#include <numbers>

namespace cheegernet {

std::vector<int> window_vertex_set(const Surface& surface, const NetGraph& net) {
    GeodesicDomain all;
    all.pieces = surface.window();
    return boundary_vertex_set(net, all).s_g;
}

std::vector<GeodesicDomain> best_domains(const Surface& surface, int count, int max_pieces) {
    if (count <= 0) return {};
    const auto& window = surface.window();
    const int limit = max_pieces <= 0 ? static_cast<int>(window.size())
                                      : std::min<int>(max_pieces, static_cast<int>(window.size()));
    std::vector<char> in(static_cast<std::size_t>(surface.piece_count()), 0);
    using Entry = std::pair<double, std::vector<int>>;
    std::vector<Entry> heap;  // max-heap on (ratio, pieces)
    for_each_connected_subset(surface, window, limit, [&](std::span<const int> pieces) {
        for (int p : pieces) in[static_cast<std::size_t>(p)] = 1;
        double len = 0.0;
        for (int p : pieces) {
            for (int s = 0; s < kSlotsPerPiece; ++s) {
                const auto& info = surface.slot(p, s);
                if (info.kind != SlotKind::Glued) continue;
                const auto& g = surface.gluing(info.index);
                const SlotRef other = (g.a == SlotRef{p, s}) ? g.b : g.a;
                if (!in[static_cast<std::size_t>(other.piece)]) len += g.length;
            }
        }
        for (int p : pieces) in[static_cast<std::size_t>(p)] = 0;
        const double r = len / (2.0 * std::numbers::pi * static_cast<double>(pieces.size()));
        if (static_cast<int>(heap.size()) < count || r < heap.front().first) {
            heap.emplace_back(r, std::vector<int>(pieces.begin(), pieces.end()));
            std::push_heap(heap.begin(), heap.end());
            if (static_cast<int>(heap.size()) > count) {
                std::pop_heap(heap.begin(), heap.end());
                heap.pop_back();
            }
        }
        return true;
    });
    std::sort_heap(heap.begin(), heap.end());
    std::vector<GeodesicDomain> out;
    for (auto& [r, pieces] : heap) out.push_back(domain_from_pieces(surface, std::move(pieces)));
    return out;
}

CheegerReport net_cheeger_estimate(const Surface& surface, const NetGraph& net, const NetCheegerOptions& options) {
    CheegerOptions opt;
    opt.max_size = options.max_size;
    const bool proper = static_cast<int>(surface.window().size()) < surface.piece_count();
    if (proper) {
        opt.mode = CheegerMode::Ambient;
        opt.interior = window_vertex_set(surface, net);
    } else {
        opt.mode = CheegerMode::FiniteHalf;
    }
    for (const auto& d : best_domains(surface, options.candidate_domains, options.max_pieces)) {
        opt.candidates.push_back(boundary_vertex_set(net, d).s_g);
    }
    return cheeger(net.graph, opt);
}

int default_proxy_base(const Surface& surface, const NetGraph& net) {
    return net.hub.at(static_cast<std::size_t>(surface.window().front()));
}

}  // namespace cheegernet
