#include "doctest.h"

#include "cheegernet/isoperimetry.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

using namespace cheegernet;

namespace {

constexpr double kPi = std::numbers::pi;

struct BruteDomain {
    double ratio = std::numeric_limits<double>::infinity();
    double worst_c = std::numeric_limits<double>::infinity();
};

// Every subset of the window, connectivity by flood fill, lengths summed
// straight from the gluing list.
BruteDomain brute(const SurfaceSpec& spec, const std::vector<int>& window, double delta) {
    BruteDomain out;
    const auto k = window.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        std::set<int> in;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1u) in.insert(window[i]);
        }
        std::set<int> seen{*in.begin()};
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& g : spec.gluings) {
                for (const auto& [x, y] : {std::pair{g.a.piece, g.b.piece}, std::pair{g.b.piece, g.a.piece}}) {
                    if (seen.count(x) && in.count(y) && !seen.count(y)) {
                        seen.insert(y);
                        grew = true;
                    }
                }
            }
        }
        if (seen.size() != in.size()) continue;
        double len = 0.0, long_len = 0.0;
        int short_count = 0;
        for (const auto& g : spec.gluings) {
            if ((in.count(g.a.piece) > 0) == (in.count(g.b.piece) > 0)) continue;
            len += g.length;
            if (g.length >= delta) long_len += g.length;
            else ++short_count;
        }
        out.ratio = std::min(out.ratio, len / (2.0 * kPi * static_cast<double>(in.size())));
        if (short_count > 0) out.worst_c = std::min(out.worst_c, long_len / short_count);
    }
    return out;
}

}  // namespace

TEST_CASE("flute chain") {
    for (int n = 2; n <= 12; ++n) {
        const Surface s(flute_spec(n));
        const auto r = h_g_exact(s);
        CHECK(std::abs(r.best_ratio - 1.0 / (kPi * n)) < 1e-12);
        CHECK(r.best_domain.pieces == s.window());
        CHECK(r.best_domain.area == doctest::Approx(2.0 * kPi * n));
        CHECK(r.best_domain.boundary_length == doctest::Approx(2.0));
        CHECK(r.method == IsoMethod::Exhaustive);
        CHECK(r.lower_bound_certified);
        CHECK_FALSE(r.truncated);
        for (double delta : {0.05, 0.5, 0.99}) CHECK(std::isinf(regularity_constant(s, delta).worst_c));
    }
}

TEST_CASE("tree of pants") {
    for (int n : {3, 6, 10, 14}) {
        const Surface s(tree_spec(n));
        CHECK(h_g_exact(s).best_ratio == doctest::Approx((n + 2.0) / (2.0 * kPi * n)).epsilon(1e-12));
    }
}

TEST_CASE("truncated search") {
    const Surface s(flute_spec(10));
    const auto r = h_g_exact(s, 4);
    CHECK(r.truncated);
    CHECK_FALSE(r.lower_bound_certified);
    CHECK(r.best_ratio == doctest::Approx(1.0 / (4.0 * kPi)));
    CHECK(r.best_domain.pieces.size() == 4);
}

TEST_CASE("exhaustive search matches brute force") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        auto spec = oracle::random_spec(rng, 9, 0.44, 0.17);
        if (spec.pieces > 2 && trial % 2) {
            spec.window.clear();
            for (int p = 0; p < spec.pieces - 1; ++p) spec.window.push_back(p);
        }
        const Surface s(spec);
        const double delta = 0.17;
        const auto b = brute(spec, s.window(), delta);
        const auto r = h_g_exact(s);
        CHECK(r.best_ratio == doctest::Approx(b.ratio).epsilon(1e-12));
        CHECK(isoperimetric_ratio(r.best_domain) == doctest::Approx(r.best_ratio).epsilon(1e-12));
        const auto reg = regularity_constant(s, delta);
        if (std::isinf(b.worst_c)) {
            CHECK(std::isinf(reg.worst_c));
        } else {
            CHECK(reg.worst_c == doctest::Approx(b.worst_c).epsilon(1e-12));
            REQUIRE(reg.witness_domain);
            CHECK(regularity_ratio(s, *reg.witness_domain, delta) == doctest::Approx(reg.worst_c));
        }
    }
}

TEST_CASE("parametric search is an upper bound") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const Surface s(oracle::random_spec(rng, 10, 0.44, 0.17));
        const auto exact = h_g_exact(s);
        const auto para = h_g_parametric(s, {8, 32, static_cast<std::uint64_t>(trial)});
        CHECK(para.best_ratio >= exact.best_ratio - 1e-12);
        CHECK(para.method == IsoMethod::RatioCutHeuristic);
        CHECK_FALSE(para.lower_bound_certified);
        CHECK(isoperimetric_ratio(para.best_domain) == doctest::Approx(para.best_ratio));
    }
    for (int n : {5, 12, 20}) {
        const Surface s(flute_spec(n));
        CHECK(h_g_parametric(s).best_ratio == doctest::Approx(1.0 / (kPi * n)));
    }
    const Surface t(tree_spec(18));
    CHECK(h_g_parametric(t).best_ratio == doctest::Approx(20.0 / (36.0 * kPi)));
    // same seed, same answer
    const auto a = h_g_parametric(t, {4, 16, 7});
    const auto b = h_g_parametric(t, {4, 16, 7});
    CHECK(a.best_domain.pieces == b.best_domain.pieces);
}

TEST_CASE("shrinking family fails regularity") {
    for (int n : {4, 8}) {
        const Surface s(shrinking_spec(n));
        const double delta = 1.0 / n;
        const auto reg = regularity_constant(s, delta);
        CHECK(reg.worst_c == 0.0);
        REQUIRE(reg.witness_domain);
        const auto chain = check_nonregular_chain(s, delta, 6);
        CHECK(chain.witnesses > 0);
        CHECK(chain.reg2_violations == 0);
        CHECK(chain.area_violations == 0);
        CHECK(chain.min_area_margin > 0.0);
    }
}

TEST_CASE("log-log fit") {
    std::vector<double> x, y;
    for (int n = 1; n <= 10; ++n) {
        x.push_back(n);
        y.push_back(3.0 * std::pow(n, -1.5));
    }
    const auto f = fit_loglog(x, y, 10);
    CHECK(f.slope == doctest::Approx(-1.5));
    CHECK(f.intercept == doctest::Approx(std::log(3.0)));
    CHECK(f.r2 == doctest::Approx(1.0));
    CHECK(f.points == 10);
    CHECK(fit_loglog(x, y).points == 5);
    y[9] = 0.0;
    CHECK(fit_loglog(x, y, 10).points == 9);
}

TEST_CASE("family verdicts") {
    const hypmath::MargulisParam eps(hypmath::kArcsinhOne / 2.0);
    const double delta = 0.17;
    const std::vector<int> ns{4, 6, 8, 10, 12};
    const auto flute = lii_verdict(Family::builtin("flute"), ns, eps, delta);
    CHECK(flute.verdict == LiiVerdict::NoEvidence);
    CHECK(flute.decaying);
    CHECK(flute.fit.slope == doctest::Approx(-1.0));
    const auto tree = lii_verdict(Family::builtin("tree"), ns, eps, delta);
    CHECK(tree.verdict == LiiVerdict::HasEvidence);
    CHECK(to_string(LiiVerdict::HasEvidence) == "has_LII_evidence");
    CHECK(cheeger_lower_bound_from_hg(1.0) == 0.5);
    CHECK(cheeger_lower_bound_from_hg(0.0) == 0.0);
}
