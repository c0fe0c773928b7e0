#include "cheegernet/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace cheegernet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Ratios that agree to this relative tolerance are ties.
bool ratio_less(double a, double b) { return a < b - 1e-12 * std::max(1.0, std::abs(b)); }
bool ratio_tie(double a, double b) { return !ratio_less(a, b) && !ratio_less(b, a); }

bool lex_less(std::span<const int> a, std::span<const int> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct BoundarySplit {
    double length = 0.0;        // total boundary length
    double long_length = 0.0;   // components of length >= delta
    int short_count = 0;        // components of length < delta
};

// Boundary quantities of a piece set without building a GeodesicDomain.
class Scratch {
  public:
    explicit Scratch(const Surface& s) : surface_(s), in_(static_cast<std::size_t>(s.piece_count()), 0) {}

    BoundarySplit split(std::span<const int> pieces, double delta) {
        for (int p : pieces) in_[static_cast<std::size_t>(p)] = 1;
        BoundarySplit out;
        for (int p : pieces) {
            for (int s = 0; s < kSlotsPerPiece; ++s) {
                const auto& info = surface_.slot(p, s);
                if (info.kind != SlotKind::Glued) continue;
                const auto& g = surface_.gluing(info.index);
                const SlotRef other = (g.a == SlotRef{p, s}) ? g.b : g.a;
                if (in_[static_cast<std::size_t>(other.piece)]) continue;
                out.length += g.length;
                if (g.length >= delta) out.long_length += g.length;
                else ++out.short_count;
            }
        }
        for (int p : pieces) in_[static_cast<std::size_t>(p)] = 0;
        return out;
    }

    double ratio(std::span<const int> pieces) {
        return split(pieces, 0.0).length / (kTwoPi * static_cast<double>(pieces.size()));
    }

  private:
    const Surface& surface_;
    std::vector<char> in_;
};

int effective_limit(const Surface& surface, int max_pieces) {
    const int w = static_cast<int>(surface.window().size());
    return max_pieces <= 0 ? w : std::min(max_pieces, w);
}

struct Best {
    double value = kInf;
    std::vector<int> pieces;

    void offer(double v, std::span<const int> p) {
        if (pieces.empty() || ratio_less(v, value) || (ratio_tie(v, value) && lex_less(p, pieces))) {
            value = v;
            pieces.assign(p.begin(), p.end());
        }
    }
};

}  // namespace

std::string to_string(IsoMethod m) { return m == IsoMethod::Exhaustive ? "exhaustive" : "ratio_cut_heuristic"; }

std::string to_string(LiiVerdict v) { return v == LiiVerdict::HasEvidence ? "has_LII_evidence" : "no_LII_evidence"; }

double isoperimetric_ratio(const GeodesicDomain& d) { return d.boundary_length / d.area; }

IsoperimetricReport h_g_exact(const Surface& surface, int max_pieces) {
    const int limit = effective_limit(surface, max_pieces);
    Scratch scratch(surface);
    Best best;
    const auto count = for_each_connected_subset(surface, surface.window(), limit, [&](std::span<const int> p) {
        best.offer(scratch.ratio(p), p);
        return true;
    });
    IsoperimetricReport r;
    r.best_domain = domain_from_pieces(surface, best.pieces);
    r.best_ratio = isoperimetric_ratio(r.best_domain);
    r.domains_examined = count;
    r.method = IsoMethod::Exhaustive;
    r.truncated = limit < static_cast<int>(surface.window().size());
    r.lower_bound_certified = !r.truncated;
    return r;
}

IsoperimetricReport h_g_parametric(const Surface& surface, ParametricBudget budget) {
    const auto& window = surface.window();
    const auto n = static_cast<std::size_t>(surface.piece_count());
    Scratch scratch(surface);
    std::mt19937_64 rng(budget.seed);
    std::size_t examined = 0;

    auto objective = [&](const std::vector<int>& set, double lambda) {
        ++examined;
        return scratch.split(set, 0.0).length - lambda * kTwoPi * static_cast<double>(set.size());
    };

    // Steepest descent on L - lambda A with single add/remove moves that keep
    // the set connected and non-empty.
    auto descend = [&](std::vector<int> set, double lambda) {
        std::vector<char> in(n, 0);
        for (int p : set) in[static_cast<std::size_t>(p)] = 1;
        double current = objective(set, lambda);
        for (;;) {
            double best_value = current;
            std::vector<int> best_set;
            std::vector<int> candidates;
            for (int p : set) {
                for (int u : surface.neighbours(p)) {
                    if (!in[static_cast<std::size_t>(u)] && surface.in_window(u)) candidates.push_back(u);
                }
            }
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
            for (int u : candidates) {
                std::vector<int> next = set;
                next.insert(std::upper_bound(next.begin(), next.end(), u), u);
                const double v = objective(next, lambda);
                if (v < best_value - 1e-12) {
                    best_value = v;
                    best_set = std::move(next);
                }
            }
            if (set.size() > 1) {
                for (std::size_t i = 0; i < set.size(); ++i) {
                    std::vector<int> next = set;
                    next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
                    if (!is_connected_subset(surface, next)) continue;
                    const double v = objective(next, lambda);
                    if (v < best_value - 1e-12) {
                        best_value = v;
                        best_set = std::move(next);
                    }
                }
            }
            if (best_set.empty()) return set;
            for (int p : set) in[static_cast<std::size_t>(p)] = 0;
            set = std::move(best_set);
            for (int p : set) in[static_cast<std::size_t>(p)] = 1;
            current = best_value;
        }
    };

    auto random_start = [&]() {
        std::vector<int> set{window[rng() % window.size()]};
        const std::size_t target = 1 + rng() % window.size();
        std::vector<char> in(n, 0);
        in[static_cast<std::size_t>(set[0])] = 1;
        while (set.size() < target) {
            std::vector<int> frontier;
            for (int p : set) {
                for (int u : surface.neighbours(p)) {
                    if (!in[static_cast<std::size_t>(u)] && surface.in_window(u)) frontier.push_back(u);
                }
            }
            if (frontier.empty()) break;
            const int u = frontier[rng() % frontier.size()];
            in[static_cast<std::size_t>(u)] = 1;
            set.push_back(u);
        }
        std::sort(set.begin(), set.end());
        return set;
    };

    std::vector<std::vector<int>> starts;
    for (int p : window) starts.push_back({p});
    if (is_connected_subset(surface, window)) starts.push_back(window);
    for (int i = 0; i < budget.restarts; ++i) starts.push_back(random_start());

    Best best;
    for (auto set : starts) {
        double lambda = scratch.ratio(set);
        for (int round = 0; round < budget.max_rounds; ++round) {
            auto next = descend(set, lambda);
            const double r = scratch.ratio(next);
            best.offer(r, next);
            if (!ratio_less(r, lambda)) break;
            lambda = r;
            set = std::move(next);
        }
        best.offer(scratch.ratio(set), set);
    }

    IsoperimetricReport r;
    r.best_domain = domain_from_pieces(surface, best.pieces);
    r.best_ratio = isoperimetric_ratio(r.best_domain);
    r.domains_examined = examined;
    r.method = IsoMethod::RatioCutHeuristic;
    r.lower_bound_certified = false;
    return r;
}

double regularity_ratio(const Surface& surface, const GeodesicDomain& d, double delta) {
    double long_length = 0.0;
    int short_count = 0;
    for (int id : d.boundary_geodesics) {
        const double l = surface.gluing(id).length;
        if (l >= delta) long_length += l;
        else ++short_count;
    }
    return short_count == 0 ? kInf : long_length / short_count;
}

RegularityReport regularity_constant(const Surface& surface, double delta, int max_pieces) {
    if (!(delta > 0.0)) throw std::invalid_argument("regularity delta must be positive");
    Scratch scratch(surface);
    Best best;
    RegularityReport r;
    r.delta = delta;
    r.domains_examined = for_each_connected_subset(
        surface, surface.window(), effective_limit(surface, max_pieces), [&](std::span<const int> p) {
            const auto s = scratch.split(p, delta);
            if (s.short_count > 0) best.offer(s.long_length / s.short_count, p);
            return true;
        });
    if (best.pieces.empty()) {
        r.worst_c = kInf;
    } else {
        r.witness_domain = domain_from_pieces(surface, best.pieces);
        r.worst_c = regularity_ratio(surface, *r.witness_domain, delta);
    }
    return r;
}

NonRegularChainCheck check_nonregular_chain(const Surface& surface, double delta, int max_pieces,
                                            double tolerance) {
    NonRegularChainCheck out;
    out.min_area_margin = kInf;
    Scratch scratch(surface);
    const double n = 1.0 / delta;
    for_each_connected_subset(surface, surface.window(), effective_limit(surface, max_pieces),
                              [&](std::span<const int> p) {
                                  const auto s = scratch.split(p, delta);
                                  if (!(s.long_length < delta * s.short_count)) return true;
                                  ++out.witnesses;
                                  const auto d = domain_from_pieces(surface, {p.begin(), p.end()});
                                  if (d.boundary_count > 3 * d.euler_defect()) ++out.reg2_violations;
                                  const double margin = d.area - n * std::numbers::pi / 3.0 * d.boundary_length;
                                  out.min_area_margin = std::min(out.min_area_margin, margin);
                                  if (!(margin > -tolerance)) ++out.area_violations;
                                  return true;
                              });
    return out;
}

TrendFit fit_loglog(std::span<const double> x, std::span<const double> y, std::size_t tail) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() > tail) {
        lx.erase(lx.begin(), lx.end() - static_cast<std::ptrdiff_t>(tail));
        ly.erase(ly.begin(), ly.end() - static_cast<std::ptrdiff_t>(tail));
    }
    TrendFit f;
    f.points = lx.size();
    if (f.points < 2) return f;
    const double m = static_cast<double>(f.points);
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

double cheeger_lower_bound_from_hg(double h_g) {
    if (!(h_g > 0.0)) return 0.0;
    return h_g / (1.0 + h_g);
}

LiiReport lii_verdict(const Family& family, std::span<const int> params, hypmath::MargulisParam eps,
                      double delta, int max_pieces) {
    LiiReport out;
    std::vector<double> xs, ys;
    for (int n : params) {
        const Surface s(family.instance(n));
        FamilyPoint pt;
        pt.param = n;
        pt.hg = h_g_exact(s, max_pieces);
        pt.h_lower_bound = cheeger_lower_bound_from_hg(pt.hg.best_ratio);
        pt.worst_c = regularity_constant(s, delta, max_pieces).worst_c;
        pt.lambda = lambda_x(s, eps, delta);
        xs.push_back(static_cast<double>(n));
        ys.push_back(pt.hg.best_ratio);
        out.points.push_back(std::move(pt));
    }
    out.fit = fit_loglog(xs, ys);
    out.decaying = out.fit.points >= 2 && out.fit.slope < kDecaySlope && out.fit.r2 > kDecayR2;
    out.verdict = out.decaying ? LiiVerdict::NoEvidence : LiiVerdict::HasEvidence;
    return out;
}

}  // namespace cheegernet
