#pragma once

// Isoperimetric constants of geodesic domains: h_g = inf L(boundary)/area over
// connected unions of pieces, the delta-regularity constant, and a
// family-level LII verdict built on both.

#include "cheegernet/families.hpp"
#include "cheegernet/hypmath.hpp"
#include "cheegernet/surface.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cheegernet {

enum class IsoMethod { Exhaustive, RatioCutHeuristic };

std::string to_string(IsoMethod m);

struct IsoperimetricReport {
    double best_ratio = 0.0;
    GeodesicDomain best_domain;
    std::size_t domains_examined = 0;
    IsoMethod method = IsoMethod::Exhaustive;
    bool lower_bound_certified = false;
    bool truncated = false;  // max_pieces smaller than the window
};

/// L(boundary) / area for a domain.
double isoperimetric_ratio(const GeodesicDomain& d);

/// Minimum ratio over every connected subset of the window with at most
/// `max_pieces` pieces (max_pieces <= 0 means no limit). Ties go to the
/// lexicographically smallest sorted piece list.
IsoperimetricReport h_g_exact(const Surface& surface, int max_pieces = 0);

struct ParametricBudget {
    int restarts = 24;      // random starts on top of one start per window piece
    int max_rounds = 64;    // parameter updates per start
    std::uint64_t seed = 1;
};

/// Dinkelbach-style search: alternate lambda <- L/A of the incumbent with a
/// local search minimising L - lambda A over connected sets. Upper bound only.
IsoperimetricReport h_g_parametric(const Surface& surface, ParametricBudget budget = {});

struct RegularityReport {
    double delta = 0.0;
    double worst_c = 0.0;  // +infinity when no domain has a short boundary component
    std::optional<GeodesicDomain> witness_domain;
    std::size_t domains_examined = 0;
};

/// L(long boundary) / #short boundary components, with x/0 = +infinity.
/// A component is long when its length is at least delta.
double regularity_ratio(const Surface& surface, const GeodesicDomain& d, double delta);

RegularityReport regularity_constant(const Surface& surface, double delta, int max_pieces = 0);

/// Re-checks the arithmetic that turns a failure of delta-regularity into a
/// failure of LII: every domain G with L(long) < delta * #short must satisfy
/// m <= 3(m+p-2+2g) and A(G) > (pi / (3 delta)) L(boundary G).
struct NonRegularChainCheck {
    std::size_t witnesses = 0;
    std::size_t reg2_violations = 0;
    std::size_t area_violations = 0;
    double min_area_margin = 0.0;  // min over witnesses of A - (pi/(3 delta)) L
};

NonRegularChainCheck check_nonregular_chain(const Surface& surface, double delta, int max_pieces = 0,
                                            double tolerance = 1e-9);

// ---------------------------------------------------------------------------
// Family verdicts

struct TrendFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
};

/// Least-squares fit of log y against log x over the last `tail` points with
/// y > 0.
TrendFit fit_loglog(std::span<const double> x, std::span<const double> y, std::size_t tail = 5);

enum class LiiVerdict { HasEvidence, NoEvidence };

std::string to_string(LiiVerdict v);

/// Lower bound for the Cheeger constant from h^{-1} <= h_g^{-1} + 1.
double cheeger_lower_bound_from_hg(double h_g);

struct FamilyPoint {
    int param = 0;
    IsoperimetricReport hg;
    double h_lower_bound = 0.0;
    double worst_c = 0.0;
    double lambda = 0.0;
};

struct LiiReport {
    LiiVerdict verdict = LiiVerdict::HasEvidence;
    bool decaying = false;
    TrendFit fit;
    std::vector<FamilyPoint> points;
};

/// Slope below -0.5 with R^2 above 0.9 counts as decay.
inline constexpr double kDecaySlope = -0.5;
inline constexpr double kDecayR2 = 0.9;

/// Sweeps h_g over the family and labels the trend. The verdict is evidence
/// at truncation scale, not a proof.
LiiReport lii_verdict(const Family& family, std::span<const int> params, hypmath::MargulisParam eps,
                      double delta, int max_pieces = 0);

}  // namespace cheegernet
