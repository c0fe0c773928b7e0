#pragma once

// Gadget model of the net graph of a surface: every Y-piece contributes a hub
// and one sample ring per boundary curve, cusps and short geodesics get one
// special vertex each. Also the mesh of the surgered surface and a grid
// estimate of quasi-isometry constants between two graphs.

#include "cheegernet/graph.hpp"
#include "cheegernet/hypmath.hpp"
#include "cheegernet/surface.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cheegernet {

enum class VertexKind : std::uint8_t { Hub, Ring, CuspW, ThinV };

std::string to_string(VertexKind k);

struct VertexTag {
    VertexKind kind = VertexKind::Hub;
    int piece = -1;   // Hub, Ring (owning side for shared rings)
    int slot = -1;    // Ring
    int sample = -1;  // Ring
    int special = -1; // cusp id (CuspW) or gluing id (ThinV)

    friend bool operator==(const VertexTag&, const VertexTag&) = default;
};

class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct NetBuildParams {
    double eps = 0.0;
    double delta = 0.0;
    /// Multiplies the number of samples per unit length of boundary curve.
    int density = 1;

    /// Checks 0 < delta < delta1(eps) and density >= 1; throws ParameterError.
    void validate() const;
};

/// Spokes from a hub to a long ring are capped at ceil(2 density / delta),
/// evenly strided, so the degree does not grow with the ring length.
int spoke_cap(double delta, int density = 1);

/// Packing constant of the gadget: the most net vertices a hub or a ring
/// sample can see, max(4, 3 spoke_cap).
int packing_constant(double delta, int density = 1);

/// max{ mu + 1, ceil(2 density sinh eps / delta) mu, ceil(4 density sinh eps / delta) mu }.
int degree_bound(double eps, double delta, int density = 1);

struct NetGraph {
    Graph graph;
    std::vector<VertexTag> tags;
    SurfaceSpec spec;
    NetBuildParams params;

    std::vector<int> hub;                          // per piece
    std::vector<std::array<std::vector<int>, 3>> rings;  // per piece and slot; shared rings appear twice
    std::vector<std::array<std::vector<int>, 3>> spokes; // ring samples joined to the hub, per piece and slot
    std::vector<int> cusp_w;                       // per cusp id
    std::vector<int> thin_v;                       // per gluing id, -1 outside J_delta
    std::vector<double> ring_length;               // per piece*3+slot, curve length sampled

    bool in_j_delta(int gluing) const { return thin_v.at(static_cast<std::size_t>(gluing)) >= 0; }
};

/// Builds the gadget net graph. Vertex order: pieces by id, each as hub then
/// slots 0..2 by sample index (a shared ring is listed under its first side),
/// then w per cusp id, then v per gluing id.
NetGraph build_net(const Surface& surface, const NetBuildParams& params);

struct BoundaryVertexSet {
    std::vector<int> s_g;       // sorted
    std::vector<int> boundary;  // vertices at distance 1 from s_g, sorted
    std::vector<int> d2d_part;  // samples of boundary geodesics of G
    std::vector<int> thin_part; // far rings of short boundary geodesics
};

/// S_G for a domain: hubs of its pieces, cusp rings and w of its cusps, thin
/// rings on its side, shared rings with both sides inside, and v of every
/// short geodesic touching it.
BoundaryVertexSet boundary_vertex_set(const NetGraph& net, const GeodesicDomain& domain);

struct QuotientMesh {
    Graph graph;                 // weighted
    std::vector<int> net_to_mesh;  // -1 for w and v
    std::vector<double> hub_radius;  // spoke weight per piece
};

/// Mesh of the surface with cusp collars and short collars cut out and the two
/// rings of each short collar identified. Each ring of k net samples becomes
/// refinement * k samples.
QuotientMesh build_quotient_mesh(const Surface& surface, const NetBuildParams& params, int refinement = 1);

struct QiEstimate {
    double alpha = 0.0;
    double beta = 0.0;
    double fullness = 0.0;
    std::size_t pairs = 0;
    /// beta(alpha) along the grid.
    std::vector<std::pair<double, double>> table;
};

/// Grid values of alpha: 1, 1.25, ..., 8.
std::vector<double> qi_alpha_grid();

/// For f = map (entries < 0 are outside the domain) and each alpha on the grid,
/// beta(alpha) is the least beta with d_A/alpha - beta <= d_B(f, f) <=
/// alpha d_A + beta over all domain pairs. Reports the alpha minimising
/// alpha + beta(alpha) (smaller alpha on ties), and the largest distance from a
/// vertex of B to the image.
QiEstimate estimate_qi_constants(const Graph& a, const Graph& b, const std::vector<int>& map);

/// Edge list with "# vertices N" and one "# v id kind ..." line per vertex.
void write_net_edge_list(std::ostream& out, const NetGraph& net);
void write_net_dot(std::ostream& out, const NetGraph& net);

std::string describe(const VertexTag& tag);

}  // namespace cheegernet
