#include "cheegernet/graphtools.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cheegernet {

std::string to_string(CheegerMode m) { return m == CheegerMode::Ambient ? "ambient" : "finite_half"; }

std::size_t vertex_boundary_size(const Graph& g, std::span<const int> set) {
    std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : set) in[static_cast<std::size_t>(v)] = 1;
    std::vector<char> seen(in.size(), 0);
    std::size_t count = 0;
    for (int v : set) {
        for (const auto& a : g.arcs(v)) {
            const auto u = static_cast<std::size_t>(a.to);
            if (!in[u] && !seen[u]) {
                seen[u] = 1;
                ++count;
            }
        }
    }
    return count;
}

namespace {

// Keeps the best |dA|/|A| with exact rational comparison; ties go to the
// lexicographically smaller sorted set.
struct CheegerBest {
    std::size_t boundary = 0;
    std::size_t size = 0;
    std::vector<int> set;

    bool beats(std::size_t b, std::size_t s) const {
        return set.empty() || b * size < boundary * s;
    }
    bool ties(std::size_t b, std::size_t s) const { return !set.empty() && b * size == boundary * s; }

    void offer(std::size_t b, std::vector<int> candidate) {
        std::sort(candidate.begin(), candidate.end());
        const std::size_t s = candidate.size();
        if (s == 0) return;
        if (beats(b, s) || (ties(b, s) && candidate < set)) {
            boundary = b;
            size = s;
            set = std::move(candidate);
        }
    }
    double value() const { return static_cast<double>(boundary) / static_cast<double>(size); }
};

// Incrementally maintained vertex boundary of a growing/shrinking set.
class BoundaryTracker {
  public:
    explicit BoundaryTracker(const Graph& g)
        : g_(g), in_(static_cast<std::size_t>(g.vertex_count()), 0),
          near_(static_cast<std::size_t>(g.vertex_count()), 0) {}

    void add(int v) {
        const auto k = static_cast<std::size_t>(v);
        if (near_[k] > 0) --boundary_;
        in_[k] = 1;
        ++size_;
        for (const auto& a : g_.arcs(v)) {
            const auto u = static_cast<std::size_t>(a.to);
            if (!in_[u] && near_[u] == 0) ++boundary_;
            ++near_[u];
        }
    }
    void remove(int v) {
        const auto k = static_cast<std::size_t>(v);
        in_[k] = 0;
        --size_;
        for (const auto& a : g_.arcs(v)) {
            const auto u = static_cast<std::size_t>(a.to);
            --near_[u];
            if (!in_[u] && near_[u] == 0) --boundary_;
        }
        if (near_[k] > 0) ++boundary_;
    }
    std::size_t boundary() const noexcept { return boundary_; }
    std::size_t size() const noexcept { return size_; }

  private:
    const Graph& g_;
    std::vector<char> in_;
    std::vector<int> near_;
    std::size_t boundary_ = 0;
    std::size_t size_ = 0;
};

// Every subset of `space` (at most kCheegerExhaustiveLimit vertices) in Gray
// code order, one vertex flip per step.
void scan_all_subsets(const Graph& g, std::span<const int> space, std::size_t max_card, CheegerBest& best) {
    const std::size_t k = space.size();
    BoundaryTracker t(g);
    std::uint64_t gray = 0;
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t i = 1; i < total; ++i) {
        const int bit = std::countr_zero(i);
        const std::uint64_t flip = std::uint64_t{1} << bit;
        if (gray & flip) t.remove(space[static_cast<std::size_t>(bit)]);
        else t.add(space[static_cast<std::size_t>(bit)]);
        gray ^= flip;
        const std::size_t s = t.size();
        if (s == 0 || s > max_card) continue;
        const std::size_t b = t.boundary();
        if (best.beats(b, s) || best.ties(b, s)) {
            std::vector<int> set;
            for (std::size_t j = 0; j < k; ++j) {
                if (gray & (std::uint64_t{1} << j)) set.push_back(space[j]);
            }
            best.offer(b, std::move(set));
        }
    }
}

// Connected subsets of `space` up to max_card vertices (ESU enumeration).
void scan_connected_subsets(const Graph& g, std::span<const int> space, std::size_t max_card, CheegerBest& best) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<char> ok(n, 0);
    for (int v : space) ok[static_cast<std::size_t>(v)] = 1;
    std::vector<int> near(n, 0);
    std::vector<char> in(n, 0);
    std::vector<int> current;
    BoundaryTracker t(g);

    auto add = [&](int w) {
        current.push_back(w);
        in[static_cast<std::size_t>(w)] = 1;
        for (const auto& a : g.arcs(w)) ++near[static_cast<std::size_t>(a.to)];
        t.add(w);
    };
    auto remove = [&](int w) {
        current.pop_back();
        in[static_cast<std::size_t>(w)] = 0;
        for (const auto& a : g.arcs(w)) --near[static_cast<std::size_t>(a.to)];
        t.remove(w);
    };
    std::function<void(std::vector<int>, int)> extend = [&](std::vector<int> ext, int root) {
        if (best.beats(t.boundary(), t.size()) || best.ties(t.boundary(), t.size())) {
            best.offer(t.boundary(), current);
        }
        if (current.size() >= max_card) return;
        while (!ext.empty()) {
            const int w = ext.back();
            ext.pop_back();
            std::vector<int> next = ext;
            for (const auto& a : g.arcs(w)) {
                const auto u = static_cast<std::size_t>(a.to);
                if (a.to > root && ok[u] && !in[u] && near[u] == 0) next.push_back(a.to);
            }
            add(w);
            extend(std::move(next), root);
            remove(w);
        }
    };
    for (int v : space) {
        std::vector<int> ext;
        for (const auto& a : g.arcs(v)) {
            if (a.to > v && ok[static_cast<std::size_t>(a.to)]) ext.push_back(a.to);
        }
        add(v);
        extend(std::move(ext), v);
        remove(v);
    }
}

constexpr int kSpectralLimit = 1500;

// Sweep over prefixes of `order`, keeping prefixes within max_card.
std::optional<double> sweep_prefixes(const Graph& g, std::span<const int> order, std::size_t max_card,
                                     CheegerBest& best) {
    BoundaryTracker t(g);
    std::optional<double> out;
    std::vector<int> prefix;
    for (int v : order) {
        if (prefix.size() >= max_card) break;
        t.add(v);
        prefix.push_back(v);
        const double r = static_cast<double>(t.boundary()) / static_cast<double>(t.size());
        if (!out || r < *out) out = r;
        if (best.beats(t.boundary(), t.size()) || best.ties(t.boundary(), t.size())) {
            best.offer(t.boundary(), prefix);
        }
    }
    return out;
}

std::optional<double> spectral_sweep(const Graph& g, const CheegerOptions& opt, std::span<const int> space,
                                     std::size_t max_card, CheegerBest& best) {
    const int n = g.vertex_count();
    if (n > kSpectralLimit || space.size() < 2) return std::nullopt;
    std::vector<std::pair<double, int>> keyed;
    if (opt.mode == CheegerMode::FiniteHalf) {
        Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
        for (int v = 0; v < n; ++v) {
            lap(v, v) = g.degree(v);
            for (const auto& a : g.arcs(v)) lap(v, a.to) = -1.0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
        const Eigen::VectorXd f = es.eigenvectors().col(1);
        for (int v : space) keyed.push_back({f(v), v});
    } else {
        // Dirichlet problem on the window: principal eigenvector of the
        // Laplacian restricted to interior rows and columns.
        const auto k = static_cast<int>(space.size());
        std::vector<int> index(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < k; ++i) index[static_cast<std::size_t>(space[static_cast<std::size_t>(i)])] = i;
        Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            const int v = space[static_cast<std::size_t>(i)];
            lap(i, i) = g.degree(v);
            for (const auto& a : g.arcs(v)) {
                const int j = index[static_cast<std::size_t>(a.to)];
                if (j >= 0) lap(i, j) = -1.0;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
        Eigen::VectorXd f = es.eigenvectors().col(0);
        if (f.sum() < 0) f = -f;
        for (int i = 0; i < k; ++i) keyed.push_back({-f(i), space[static_cast<std::size_t>(i)]});
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> order;
    for (const auto& [key, v] : keyed) order.push_back(v);
    auto bound = sweep_prefixes(g, order, max_card, best);
    if (opt.mode == CheegerMode::FiniteHalf) {
        std::reverse(order.begin(), order.end());
        const auto other = sweep_prefixes(g, order, max_card, best);
        if (other && (!bound || *other < *bound)) bound = other;
    }
    return bound;
}

}  // namespace

CheegerReport cheeger(const Graph& g, const CheegerOptions& opt) {
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("Cheeger constant needs at least two vertices");
    std::vector<int> space;
    std::size_t max_card = 0;
    if (opt.mode == CheegerMode::Ambient) {
        space = opt.interior;
        std::sort(space.begin(), space.end());
        space.erase(std::unique(space.begin(), space.end()), space.end());
        if (space.empty()) throw std::invalid_argument("ambient mode needs a non-empty interior");
        for (int v : space) {
            if (v < 0 || v >= n) throw std::out_of_range("interior vertex out of range");
        }
        max_card = space.size();
    } else {
        space.resize(static_cast<std::size_t>(n));
        std::iota(space.begin(), space.end(), 0);
        max_card = static_cast<std::size_t>(n) / 2;
    }

    CheegerBest best;
    CheegerReport r;
    r.mode = opt.mode;
    if (space.size() <= static_cast<std::size_t>(kCheegerExhaustiveLimit)) {
        scan_all_subsets(g, space, max_card, best);
        r.exact = true;
    } else {
        const int limit = opt.max_size > 0 ? opt.max_size : 5;
        scan_connected_subsets(g, space, std::min<std::size_t>(max_card, static_cast<std::size_t>(limit)), best);
    }
    r.sweep_upper_bound = spectral_sweep(g, opt, space, max_card, best);

    std::vector<char> allowed(static_cast<std::size_t>(n), 0);
    for (int v : space) allowed[static_cast<std::size_t>(v)] = 1;
    auto consider = [&](std::vector<int> set) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.empty() || set.size() > max_card) return;
        for (int v : set) {
            if (v < 0 || v >= n || !allowed[static_cast<std::size_t>(v)]) return;
        }
        const std::size_t b = vertex_boundary_size(g, set);
        best.offer(b, std::move(set));
    };
    if (opt.mode == CheegerMode::Ambient) consider(space);
    for (const auto& c : opt.candidates) consider(c);

    r.value = best.value();
    r.witness_set = best.set;
    r.witness_boundary = best.boundary;
    return r;
}

// ---------------------------------------------------------------------------

namespace {

struct QuadBest {
    double delta = -1.0;
    std::array<int, 4> quad{0, 0, 0, 0};
};

double four_point(const DistanceMatrix& d, int i, int j, int k, int l) {
    double s1 = d(i, j) + d(k, l);
    double s2 = d(i, k) + d(j, l);
    double s3 = d(i, l) + d(j, k);
    if (s1 < s2) std::swap(s1, s2);
    if (s2 < s3) std::swap(s2, s3);
    if (s1 < s2) std::swap(s1, s2);
    return 0.5 * (s1 - s2);
}

double base_violation(const DistanceMatrix& d, const std::array<int, 4>& q) {
    double worst = 0.0;
    std::array<int, 4> p = q;
    std::sort(p.begin(), p.end());
    do {
        const int x = p[0], y = p[1], z = p[2], o = p[3];
        const double v = std::min(gromov_product(d, x, z, o), gromov_product(d, z, y, o)) - gromov_product(d, x, y, o);
        worst = std::max(worst, v);
    } while (std::next_permutation(p.begin(), p.end()));
    return worst;
}

}  // namespace

HyperbolicityReport hyperbolicity_delta(const DistanceMatrix& d) {
    const int n = d.size();
    HyperbolicityReport r;
    if (n < 4) {
        r.delta = 0.0;
        return r;
    }
    std::vector<QuadBest> per_first(static_cast<std::size_t>(n));
    parallel_for(n, [&](int i) {
        QuadBest b;
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                for (int l = k + 1; l < n; ++l) {
                    const double v = four_point(d, i, j, k, l);
                    if (v > b.delta) {
                        b.delta = v;
                        b.quad = {i, j, k, l};
                    }
                }
            }
        }
        per_first[static_cast<std::size_t>(i)] = b;
    });
    QuadBest best;
    for (const auto& b : per_first) {
        if (b.delta > best.delta) best = b;
    }
    r.delta = best.delta;
    r.witness_quadruple = best.quad;
    r.base_dependence = base_violation(d, best.quad);
    const auto nn = static_cast<std::uint64_t>(n);
    r.quadruples_examined = nn * (nn - 1) * (nn - 2) * (nn - 3) / 24;
    r.exact = true;
    return r;
}

HyperbolicityReport hyperbolicity_delta(const Graph& g, int cap) {
    if (g.vertex_count() > cap) {
        throw std::length_error("graph has " + std::to_string(g.vertex_count()) +
                                " vertices, above the exact hyperbolicity cap of " + std::to_string(cap) +
                                "; use the sampled mode");
    }
    if (!is_connected(g)) throw std::invalid_argument("hyperbolicity needs a connected graph");
    return hyperbolicity_delta(all_pairs_distances(g));
}

HyperbolicityReport hyperbolicity_sampled(const Graph& g, std::uint64_t samples, std::uint64_t seed) {
    if (!is_connected(g)) throw std::invalid_argument("hyperbolicity needs a connected graph");
    const int n = g.vertex_count();
    HyperbolicityReport r;
    r.exact = false;
    if (n < 4) return r;
    const auto d = all_pairs_distances(g);
    std::mt19937_64 rng(seed);
    QuadBest best;
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::array<int, 4> q{};
        for (std::size_t i = 0; i < 4; ++i) {
            bool fresh = false;
            while (!fresh) {
                q[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                fresh = std::find(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(i), q[i]) ==
                        q.begin() + static_cast<std::ptrdiff_t>(i);
            }
        }
        std::sort(q.begin(), q.end());
        const double v = four_point(d, q[0], q[1], q[2], q[3]);
        if (v > best.delta || (v == best.delta && q < best.quad)) {
            best.delta = v;
            best.quad = q;
        }
    }
    r.delta = best.delta;
    r.witness_quadruple = best.quad;
    r.base_dependence = base_violation(d, best.quad);
    r.quadruples_examined = samples;
    return r;
}

// ---------------------------------------------------------------------------

double BoundaryProxy::resolution() const { return std::pow(a, -std::ceil(0.5 * radius)); }

int eccentricity(const Graph& g, int v) {
    const auto d = bfs_distances(g, v);
    double m = 0.0;
    for (double x : d) {
        if (x == kUnreachable) throw std::invalid_argument("eccentricity of a disconnected graph");
        m = std::max(m, x);
    }
    return static_cast<int>(m);
}

BoundaryProxy boundary_proxy(const Graph& g, int o, int radius, double a) {
    if (o < 0 || o >= g.vertex_count()) throw std::out_of_range("base vertex out of range");
    if (!(a > 1.0)) throw std::invalid_argument("visual parameter a must exceed 1");
    if (radius < 1) throw std::invalid_argument("proxy radius must be positive");
    const auto from_o = bfs_distances(g, o);
    BoundaryProxy p;
    p.base = o;
    p.radius = radius;
    p.a = a;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (from_o[static_cast<std::size_t>(v)] == static_cast<double>(radius)) p.points.push_back(v);
    }
    if (p.points.empty()) {
        throw std::invalid_argument("proxy radius " + std::to_string(radius) + " exceeds the eccentricity of vertex " +
                                    std::to_string(o));
    }
    const std::size_t k = p.points.size();
    p.products.assign(k * k, 0.0);
    p.metric.assign(k * k, 0.0);
    std::vector<std::vector<double>> rows(k);
    parallel_for(static_cast<int>(k), [&](int i) { rows[static_cast<std::size_t>(i)] = bfs_distances(g, p.points[static_cast<std::size_t>(i)]); });
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double dxy = rows[i][static_cast<std::size_t>(p.points[j])];
            const double prod = 0.5 * (2.0 * radius - dxy);
            p.products[i * k + j] = prod;
            p.metric[i * k + j] = i == j ? 0.0 : std::pow(a, -prod);
        }
    }
    return p;
}

const std::vector<double>& default_s_grid() {
    static const std::vector<double> grid{1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0};
    return grid;
}

const std::vector<double>& default_eps0_grid() {
    static const std::vector<double> grid{0.5, 0.25, 0.125};
    return grid;
}

UniformPerfectnessReport uniform_perfectness(const BoundaryProxy& proxy, std::span<const double> s_grid,
                                             std::span<const double> eps0_grid) {
    UniformPerfectnessReport out;
    const std::size_t k = proxy.size();
    if (k < 2) {
        out.reason = "proxy has a single point";
        return out;
    }
    std::vector<double> realized;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) realized.push_back(proxy.distance(i, j));
    }
    std::sort(realized.begin(), realized.end());
    realized.erase(std::unique(realized.begin(), realized.end()), realized.end());

    std::vector<double> s_sorted(s_grid.begin(), s_grid.end());
    std::sort(s_sorted.begin(), s_sorted.end());
    std::vector<double> e_sorted(eps0_grid.begin(), eps0_grid.end());
    std::sort(e_sorted.rbegin(), e_sorted.rend());
    const double floor = proxy.resolution();

    for (double eps0 : e_sorted) {
        std::vector<double> scales{eps0};
        for (double d : realized) {
            if (d >= floor && d <= eps0 && d != eps0) scales.push_back(d);
        }
        std::optional<double> first_pass;
        for (double S : s_sorted) {
            UniformPerfectnessRow row{S, eps0, true, -1, 0.0};
            for (std::size_t x = 0; x < k && row.pass; ++x) {
                for (double eps : scales) {
                    bool found = false;
                    for (std::size_t y = 0; y < k && !found; ++y) {
                        if (y == x) continue;
                        const double d = proxy.distance(x, y);
                        found = eps / S < d && d <= eps;
                    }
                    if (!found) {
                        row.pass = false;
                        row.failing_point = static_cast<int>(x);
                        row.failing_eps = eps;
                        break;
                    }
                }
            }
            if (row.pass && !first_pass) first_pass = S;
            out.table.push_back(row);
        }
        if (first_pass && !out.best_S) {
            out.best_S = first_pass;
            out.best_eps0 = eps0;
        }
    }
    if (!out.best_S) out.reason = "no (S, eps0) on the grid passes";
    return out;
}

// ---------------------------------------------------------------------------

std::vector<int> ray_vertices(const Graph& g, int v) {
    const auto from_v = bfs_distances(g, v);
    double far = 0.0;
    for (double x : from_v) {
        if (x == kUnreachable) throw std::invalid_argument("pole search needs a connected graph");
        far = std::max(far, x);
    }
    std::vector<char> on(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int f = 0; f < g.vertex_count(); ++f) {
        if (from_v[static_cast<std::size_t>(f)] != far) continue;
        const auto from_f = bfs_distances(g, f);
        for (int x = 0; x < g.vertex_count(); ++x) {
            if (from_v[static_cast<std::size_t>(x)] + from_f[static_cast<std::size_t>(x)] == far) {
                on[static_cast<std::size_t>(x)] = 1;
            }
        }
    }
    std::vector<int> out;
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (on[static_cast<std::size_t>(x)]) out.push_back(x);
    }
    return out;
}

int pole_radius(const Graph& g, int v) {
    const auto rays = ray_vertices(g, v);
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> queue;
    for (int x : rays) {
        dist[static_cast<std::size_t>(x)] = 0;
        queue.push_back(x);
    }
    int worst = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int x = queue[head];
        worst = std::max(worst, dist[static_cast<std::size_t>(x)]);
        for (const auto& a : g.arcs(x)) {
            auto& d = dist[static_cast<std::size_t>(a.to)];
            if (d < 0) {
                d = dist[static_cast<std::size_t>(x)] + 1;
                queue.push_back(a.to);
            }
        }
    }
    return worst;
}

std::optional<int> has_pole(const Graph& g, int v, std::span<const int> m_grid) {
    const int r = pole_radius(g, v);
    std::optional<int> best;
    for (int m : m_grid) {
        if (m >= r && (!best || m < *best)) best = m;
    }
    return best;
}

}  // namespace cheegernet
