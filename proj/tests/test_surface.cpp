#include "doctest.h"

#include "cheegernet/families.hpp"
#include "cheegernet/surface.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>

using namespace cheegernet;

namespace {

SurfaceSpec pants_with_cusps() { return {1, {}, {{0, 0}, {0, 1}, {0, 2}}, {}}; }

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

// Connectivity of a piece set by BFS over gluings, independent of Surface.
bool bfs_connected(const SurfaceSpec& spec, const std::vector<int>& pieces) {
    std::set<int> in(pieces.begin(), pieces.end());
    std::set<int> seen{pieces.front()};
    std::queue<int> q;
    q.push(pieces.front());
    while (!q.empty()) {
        const int p = q.front();
        q.pop();
        for (const auto& g : spec.gluings) {
            for (const auto& [x, y] : {std::pair{g.a.piece, g.b.piece}, std::pair{g.b.piece, g.a.piece}}) {
                if (x == p && in.count(y) && !seen.count(y)) {
                    seen.insert(y);
                    q.push(y);
                }
            }
        }
    }
    return seen.size() == in.size();
}

}  // namespace

TEST_CASE("valid minimal surfaces") {
    CHECK(validate(pants_with_cusps()).empty());
    const Surface s(pants_with_cusps());
    CHECK(s.piece_count() == 1);
    CHECK(s.window() == std::vector<int>{0});
    CHECK(s.slot(0, 2).kind == SlotKind::Cusp);
    CHECK(s.slot(0, 2).index == 2);

    // genus two: two pants glued along all three boundaries
    const SurfaceSpec closed{2, {{{0, 0}, {1, 0}, 1.0}, {{0, 1}, {1, 1}, 1.0}, {{0, 2}, {1, 2}, 1.0}}, {}, {}};
    const Surface c(closed);
    const auto d = domain_from_pieces(c, {0, 1});
    CHECK(d.genus == 2);
    CHECK(d.boundary_count == 0);
    CHECK(d.enclosed_cusps == 0);
}

TEST_CASE("validation lists every violation") {
    SurfaceSpec bad{2, {{{0, 0}, {0, 0}, 1.0}, {{0, 1}, {5, 1}, -2.0}}, {{1, 0}, {1, 0}}, {7}};
    const auto v = validate(bad);
    CHECK(mentions(v, "matching not an involution"));
    CHECK(mentions(v, "missing slot [5,1]"));
    CHECK(mentions(v, "non-positive length"));
    CHECK(mentions(v, "listed as cusp more than once"));
    CHECK(mentions(v, "neither glued nor a cusp"));
    CHECK(mentions(v, "window refers to missing piece 7"));
    CHECK_THROWS_AS(Surface{bad}, ValidationError);

    SurfaceSpec twice{2, {{{0, 0}, {1, 0}, 1.0}, {{0, 0}, {1, 1}, 1.0}}, {{0, 1}, {0, 2}, {1, 2}}, {}};
    CHECK(mentions(validate(twice), "glued 2 times"));

    SurfaceSpec apart{2, {}, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}, {}};
    CHECK(mentions(validate(apart), "pieces multigraph is disconnected"));

    SurfaceSpec both{1, {{{0, 0}, {0, 1}, 1.0}}, {{0, 0}, {0, 2}}, {}};
    CHECK(mentions(validate(both), "both glued and a cusp"));

    CHECK(mentions(validate(SurfaceSpec{}), "at least one piece"));
    try {
        Surface s(bad);
    } catch (const ValidationError& e) {
        CHECK(e.violations() == v);
    }
}

TEST_CASE("bridges") {
    // chain 0 - 1 - 2 with a double gluing between 1 and 2
    std::vector<Gluing> g{{{0, 0}, {1, 0}, 1.0}, {{1, 1}, {2, 0}, 1.0}, {{1, 2}, {2, 1}, 1.0}, {{0, 1}, {0, 2}, 1.0}};
    const auto b = find_bridges(3, g);
    CHECK(b == std::vector<bool>{true, false, false, false});

    const Surface flute(flute_spec(4));
    for (int i = 0; i < flute.gluing_count(); ++i) CHECK(flute.is_separating(i));
    const Surface handles(handles_spec(3));
    int non_separating = 0;
    for (int i = 0; i < handles.gluing_count(); ++i) non_separating += !handles.is_separating(i);
    CHECK(non_separating == 6);
}

TEST_CASE("bridges against brute force removal") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const auto spec = oracle::random_spec(rng, 10, 0.44, 0.17);
        const auto b = find_bridges(spec.pieces, spec.gluings);
        for (std::size_t i = 0; i < spec.gluings.size(); ++i) {
            SurfaceSpec cut = spec;
            cut.gluings.erase(cut.gluings.begin() + static_cast<std::ptrdiff_t>(i));
            std::vector<int> all(static_cast<std::size_t>(spec.pieces));
            std::iota(all.begin(), all.end(), 0);
            CHECK(b[i] == !bfs_connected(cut, all));
        }
    }
}

TEST_CASE("thick-thin decomposition") {
    const hypmath::MargulisParam eps(0.5);
    const Surface s(handles_spec(2));
    const auto tt = thick_thin(s, eps);
    CHECK(tt.cusp_collars.size() == static_cast<std::size_t>(s.cusp_count()));
    REQUIRE(tt.thin_collars.size() == 4);
    for (const auto& r : tt.thin_collars) {
        CHECK(r.core_length == doctest::Approx(0.1));
        CHECK(std::abs(r.half_width - 3.0343288926483186216) < 1e-12);
        CHECK(std::abs(r.area - 2.073891595649875983) < 1e-12);
        CHECK(std::abs(r.boundary_lengths[0] - 1.0417564915213138118) < 1e-12);
        CHECK(r.boundary_lengths[0] == r.boundary_lengths[1]);
        CHECK_FALSE(r.is_separating);
    }
    // thin means strictly shorter than 2 eps
    const SurfaceSpec edge{2, {{{0, 0}, {1, 0}, 1.0}}, {{0, 1}, {0, 2}, {1, 1}, {1, 2}}, {}};
    CHECK(thick_thin(Surface(edge), eps).thin_collars.empty());
    const SurfaceSpec under{2, {{{0, 0}, {1, 0}, 0.999}}, {{0, 1}, {0, 2}, {1, 1}, {1, 2}}, {}};
    const auto tu = thick_thin(Surface(under), eps);
    REQUIRE(tu.thin_collars.size() == 1);
    CHECK(tu.thin_collars[0].is_separating);
}

TEST_CASE("thin set grows with eps") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const Surface s(oracle::random_spec(rng, 10, 0.6, 0.2));
        std::size_t last = 0;
        for (double e : {0.2, 0.4, 0.8}) {
            const auto n = thick_thin(s, hypmath::MargulisParam(e)).thin_collars.size();
            CHECK(n >= last);
            last = n;
        }
    }
}

TEST_CASE("domains") {
    const Surface s(flute_spec(6));
    const auto d = domain_from_pieces(s, {3, 1, 2});
    CHECK(d.pieces == std::vector<int>{1, 2, 3});
    CHECK(d.boundary_count == 2);
    CHECK(d.enclosed_cusps == 3);
    CHECK(d.genus == 0);
    CHECK(d.area == doctest::Approx(6.0 * std::numbers::pi));
    CHECK(d.boundary_length == doctest::Approx(2.0));
    CHECK(d.euler_defect() == 3);
    CHECK_THROWS_AS(domain_from_pieces(s, {}), std::invalid_argument);
    CHECK_THROWS_AS(domain_from_pieces(s, {1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(domain_from_pieces(s, {1, 99}), std::invalid_argument);
}

TEST_CASE("domain genus agrees with a cell complex") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 80; ++trial) {
        const Surface s(oracle::random_spec(rng, 8, 0.44, 0.17));
        std::vector<int> all(static_cast<std::size_t>(s.piece_count()));
        std::iota(all.begin(), all.end(), 0);
        for_each_connected_subset(s, all, 8, [&](std::span<const int> p) {
            const std::vector<int> pieces(p.begin(), p.end());
            const auto d = domain_from_pieces(s, pieces);
            const auto cells = oracle::pants_complex(s, pieces);
            CHECK(cells.euler == -static_cast<int>(pieces.size()));
            CHECK(cells.boundary_circles == d.boundary_count + d.enclosed_cusps);
            CHECK((2 - cells.euler - cells.boundary_circles) % 2 == 0);
            CHECK(d.genus == (2 - cells.euler - cells.boundary_circles) / 2);
            return true;
        });
    }
}

TEST_CASE("connected subset enumeration matches brute force") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const auto spec = oracle::random_spec(rng, 10, 0.44, 0.17);
        const Surface s(spec);
        const int n = s.piece_count();
        const int cap = oracle::uniform_int(rng, 1, n);
        std::set<std::vector<int>> seen;
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        const auto count = for_each_connected_subset(s, all, cap, [&](std::span<const int> p) {
            CHECK(std::is_sorted(p.begin(), p.end()));
            seen.insert(std::vector<int>(p.begin(), p.end()));
            return true;
        });
        CHECK(count == seen.size());
        std::size_t expected = 0;
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> p;
            for (int i = 0; i < n; ++i) {
                if (mask >> i & 1u) p.push_back(i);
            }
            if (static_cast<int>(p.size()) > cap || !bfs_connected(spec, p)) continue;
            ++expected;
            CHECK(seen.count(p) == 1);
            CHECK(is_connected_subset(s, p));
        }
        CHECK(expected == seen.size());
    }
}

TEST_CASE("enumeration stops early") {
    const Surface s(flute_spec(8));
    int visits = 0;
    const auto n = for_each_connected_subset(s, s.window(), 8, [&](std::span<const int>) { return ++visits < 5; });
    CHECK(visits == 5);
    CHECK(n == 5);
}

TEST_CASE("lambda of a surface") {
    const hypmath::MargulisParam eps(hypmath::kArcsinhOne / 2.0);
    const double delta = 0.17;
    CHECK(std::isinf(lambda_x(Surface(flute_spec(3)), eps, delta)));
    CHECK(lambda_x(Surface(handles_spec(3)), eps, delta) == doctest::Approx(0.1));
    CHECK_THROWS(lambda_x(Surface(flute_spec(3)), eps, 0.5));
}
