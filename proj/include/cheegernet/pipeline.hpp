#pragma once

// Surface-to-graph pipelines shared by the command line tool and the tests.

#include "cheegernet/graphtools.hpp"
#include "cheegernet/isoperimetry.hpp"
#include "cheegernet/netgraph.hpp"

#include <vector>

namespace cheegernet {

/// S_G of the window (all pieces when no window is given). The window
/// need not be connected.
std::vector<int> window_vertex_set(const Surface& surface, const NetGraph& net);

/// The `count` connected window subsets with the smallest L/A, best first,
/// each with at most max_pieces pieces (0: no limit).
std::vector<GeodesicDomain> best_domains(const Surface& surface, int count, int max_pieces = 0);

struct NetCheegerOptions {
    int candidate_domains = 32;
    int max_pieces = 0;
    int max_size = 0;
};

/// Cheeger estimate of the net graph of a truncation. With a proper window the
/// search is ambient inside S_window; otherwise finite_half over the whole
/// graph. S_G of the best surface domains are scored as extra candidates.
CheegerReport net_cheeger_estimate(const Surface& surface, const NetGraph& net,
                                   const NetCheegerOptions& options = {});

/// Hub of the first window piece.
int default_proxy_base(const Surface& surface, const NetGraph& net);

}  // namespace cheegernet
