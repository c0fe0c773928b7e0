#pragma once

// Graph-side invariants: combinatorial Cheeger constants, four-point Gromov
// hyperbolicity, Gromov products, visual quasi-metrics on sphere proxies of
// the boundary at infinity, uniform perfectness and poles.

#include "cheegernet/graph.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cheegernet {

/// (x|y)_o = (d(x,o) + d(y,o) - d(x,y)) / 2
inline double gromov_product(const DistanceMatrix& d, int x, int y, int o) {
    return 0.5 * (d(x, o) + d(y, o) - d(x, y));
}

// ---------------------------------------------------------------------------
// Cheeger constant h = inf |dA| / |A|, dA = vertices at distance 1 from A.

enum class CheegerMode { Ambient, FiniteHalf };

std::string to_string(CheegerMode m);

struct CheegerOptions {
    CheegerMode mode = CheegerMode::FiniteHalf;
    /// Connected subsets up to this size are enumerated when the search space
    /// is too large for the all-subsets pass; 0 picks a default.
    int max_size = 0;
    /// Ambient mode: the window A must stay inside. Boundaries are counted in
    /// the whole graph.
    std::vector<int> interior;
    /// Extra sets to score (ignored unless they fit the mode's constraints).
    std::vector<std::vector<int>> candidates;
};

struct CheegerReport {
    double value = 0.0;
    std::vector<int> witness_set;  // sorted
    std::size_t witness_boundary = 0;
    CheegerMode mode = CheegerMode::FiniteHalf;
    bool exact = false;
    /// Best ratio among Fiedler-order prefixes; heuristic upper bound only.
    std::optional<double> sweep_upper_bound;
};

/// Search spaces up to this many vertices are scanned subset by subset.
inline constexpr int kCheegerExhaustiveLimit = 22;

std::size_t vertex_boundary_size(const Graph& g, std::span<const int> set);

CheegerReport cheeger(const Graph& g, const CheegerOptions& options);

// ---------------------------------------------------------------------------
// Gromov hyperbolicity

struct HyperbolicityReport {
    double delta = 0.0;
    std::array<int, 4> witness_quadruple{0, 0, 0, 0};
    /// Worst violation of the product form of the delta-inequality over the
    /// witness points used as base points. Equals delta.
    double base_dependence = 0.0;
    bool exact = true;
    std::uint64_t quadruples_examined = 0;
};

inline constexpr int kHyperbolicityCap = 400;

/// Exact four-point delta: max over quadruples of (largest - middle pair sum)/2.
/// The witness is the lexicographically first maximising quadruple (sorted).
/// Throws std::length_error above `cap` vertices.
HyperbolicityReport hyperbolicity_delta(const Graph& g, int cap = kHyperbolicityCap);
HyperbolicityReport hyperbolicity_delta(const DistanceMatrix& d);

/// Lower bound for delta from random quadruples.
HyperbolicityReport hyperbolicity_sampled(const Graph& g, std::uint64_t samples = 1'000'000,
                                          std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Boundary proxies

/// The sphere of hop radius R about o, standing in for the boundary at
/// infinity, with the visual quasi-metric a^{-(x|y)_o} (c1 = c2 = 1).
struct BoundaryProxy {
    int base = 0;
    int radius = 0;
    double a = 2.0;
    std::vector<int> points;                // sorted vertex ids
    std::vector<double> products;           // k x k Gromov products, row-major
    std::vector<double> metric;             // k x k, zero diagonal

    std::size_t size() const noexcept { return points.size(); }
    double product(std::size_t i, std::size_t j) const { return products[i * points.size() + j]; }
    double distance(std::size_t i, std::size_t j) const { return metric[i * points.size() + j]; }
    /// Smallest scale the proxy resolves: a^{-ceil(R/2)}.
    double resolution() const;
};

BoundaryProxy boundary_proxy(const Graph& g, int o, int radius, double a = 2.0);

/// Hop eccentricity of a vertex.
int eccentricity(const Graph& g, int v);

struct UniformPerfectnessRow {
    double S = 0.0;
    double eps0 = 0.0;
    bool pass = false;
    int failing_point = -1;      // proxy index of the first failing x
    double failing_eps = 0.0;
};

struct UniformPerfectnessReport {
    std::optional<double> best_S;
    double best_eps0 = 0.0;
    std::vector<UniformPerfectnessRow> table;
    std::string reason;  // set when nothing passes
};

const std::vector<double>& default_s_grid();
const std::vector<double>& default_eps0_grid();

/// For every x and every scale eps <= eps0 (eps0 itself and each realized
/// distance between the proxy resolution and eps0) some y must satisfy
/// eps/S < d(x, y) <= eps. Returns the least passing S for the largest eps0
/// that admits one.
UniformPerfectnessReport uniform_perfectness(const BoundaryProxy& proxy,
                                             std::span<const double> s_grid = default_s_grid(),
                                             std::span<const double> eps0_grid = default_eps0_grid());

// ---------------------------------------------------------------------------
// Poles

/// Vertices on some shortest path from v to a vertex at maximal distance
/// from v, sorted.
std::vector<int> ray_vertices(const Graph& g, int v);

/// Largest distance from any vertex to ray_vertices(g, v).
int pole_radius(const Graph& g, int v);

/// Least M in `m_grid` with pole_radius(g, v) <= M, or nullopt.
std::optional<int> has_pole(const Graph& g, int v, std::span<const int> m_grid);

}  // namespace cheegernet
