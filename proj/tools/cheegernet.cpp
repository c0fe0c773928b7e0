// cheegernet: command line front end.
//
//   cheegernet <command> [--eps F] [--delta F] [--max-pieces N] [--mode M]
//              [--format json|csv|dot] [--seed N] <input>
//
// Exit codes: 0 success, 2 invalid or malformed input, 3 bad parameters.

#include "cheegernet/expr.hpp"
#include "cheegernet/families.hpp"
#include "cheegernet/pipeline.hpp"
#include "cheegernet/spec_io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace cheegernet;
using nlohmann::json;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitParameter = 3;

struct RunConfig {
    std::string input;
    double eps = hypmath::kArcsinhOne / 2.0;
    std::optional<double> delta;
    int max_pieces = 0;
    std::string mode;
    std::string format;
    std::uint64_t seed = 1;
    std::string n_range;
    int budget = 0;

    int density = 1;
    int refinement = 1;
    std::optional<int> base;
    std::optional<int> radius;
    double visual_a = 2.0;
    std::uint64_t samples = 0;
    std::string interior;
};

class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

json num(double x) {
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    if (std::isnan(x)) return "nan";
    return x;
}

std::string csv_num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

hypmath::MargulisParam margulis(const RunConfig& c) {
    try {
        return hypmath::MargulisParam(c.eps);
    } catch (const hypmath::DomainError& e) {
        throw ParameterError(e.what());
    }
}

NetBuildParams net_params(const RunConfig& c) {
    const auto eps = margulis(c);
    NetBuildParams p{c.eps, c.delta.value_or(0.9 * hypmath::delta1(eps)), c.density};
    p.validate();
    return p;
}

bool is_json_path(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

Surface load_surface(const RunConfig& c) {
    const json j = read_json_file(c.input);
    if (Family::is_family_json(j)) {
        throw InputError(c.input + " is a family file; use the sweep command or give an instance");
    }
    return Surface(spec_from_json(j));
}

json domain_json(const GeodesicDomain& d) {
    return {{"pieces", d.pieces},
            {"boundary_geodesics", d.boundary_geodesics},
            {"boundary_count", d.boundary_count},
            {"enclosed_cusps", d.enclosed_cusps},
            {"genus", d.genus},
            {"area", num(d.area)},
            {"boundary_length", num(d.boundary_length)}};
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// A graph input is either a surface spec (its net graph is used) or an edge list.
struct GraphInput {
    Graph graph;
    std::optional<Surface> surface;
    std::optional<NetGraph> net;
};

GraphInput load_graph(const RunConfig& c) {
    GraphInput in;
    if (is_json_path(c.input)) {
        in.surface.emplace(load_surface(c));
        in.net.emplace(build_net(*in.surface, net_params(c)));
        in.graph = in.net->graph;
    } else {
        in.graph = read_edge_list_file(c.input);
    }
    return in;
}

std::vector<int> parse_id_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoi(item));
            } else {
                const int lo = std::stoi(item.substr(0, dots));
                const int hi = std::stoi(item.substr(dots + 2));
                for (int v = lo; v <= hi; ++v) out.push_back(v);
            }
        } catch (const std::exception&) {
            throw ParameterError("bad vertex list entry '" + item + "'");
        }
    }
    return out;
}

ParamRange parse_range(const std::string& text, ParamRange fallback) {
    if (text.empty()) return fallback;
    ParamRange r;
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            std::string rest = text.substr(dots + 2);
            const auto colon = rest.find(':');
            if (colon != std::string::npos) {
                r.step = std::stoi(rest.substr(colon + 1));
                rest = rest.substr(0, colon);
            }
            r.hi = std::stoi(rest);
        }
    } catch (const std::exception&) {
        throw ParameterError("bad range '" + text + "', expected lo..hi or lo..hi:step");
    }
    if (r.lo < 1 || r.hi < r.lo || r.step < 1) throw ParameterError("empty or invalid range '" + text + "'");
    return r;
}

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& c) {
    const json j = read_json_file(c.input);
    json out;
    bool ok = true;
    auto one = [&](const SurfaceSpec& spec) {
        const auto violations = validate(spec);
        ok = ok && violations.empty();
        for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
        return json{{"valid", violations.empty()},
                    {"pieces", spec.pieces},
                    {"gluings", spec.gluings.size()},
                    {"cusps", spec.cusps.size()},
                    {"violations", violations}};
    };
    if (Family::is_family_json(j)) {
        Family fam = Family::from_json(j);
        fam.set_range(parse_range(c.n_range, fam.range()));
        out["family"] = fam.name();
        out["instances"] = json::array();
        for (int n : fam.range().values()) {
            json row = one(fam.instance(n));
            row["param"] = n;
            out["instances"].push_back(row);
        }
        out["valid"] = ok;
    } else {
        out = one(spec_from_json(j));
    }
    print_json(out);
    return ok ? 0 : kExitInvalid;
}

int cmd_thickthin(const RunConfig& c) {
    const Surface s = load_surface(c);
    const auto eps = margulis(c);
    const ThickThin tt = thick_thin(s, eps);
    if (c.format == "csv") {
        std::cout << "kind,id,length,half_width,boundary_length_1,boundary_length_2,area,separating\n";
        for (const auto& r : tt.cusp_collars) {
            std::cout << "cusp," << r.cusp_id << ",0,inf," << csv_num(r.boundary_length) << ",,"
                      << csv_num(r.lambda) << ",false\n";
        }
        for (const auto& r : tt.thin_collars) {
            std::cout << "geodesic," << r.geodesic_id << ',' << csv_num(r.core_length) << ','
                      << csv_num(r.half_width) << ',' << csv_num(r.boundary_lengths[0]) << ','
                      << csv_num(r.boundary_lengths[1]) << ',' << csv_num(r.area) << ','
                      << (r.is_separating ? "true" : "false") << "\n";
        }
        return 0;
    }
    json out{{"eps", num(eps.value())}, {"cusp_collars", json::array()}, {"thin_collars", json::array()}};
    for (const auto& r : tt.cusp_collars) {
        const SlotRef at = s.spec().cusps[static_cast<std::size_t>(r.cusp_id)];
        out["cusp_collars"].push_back({{"cusp_id", r.cusp_id},
                                       {"piece", at.piece},
                                       {"slot", at.slot},
                                       {"lambda", num(r.lambda)},
                                       {"boundary_length", num(r.boundary_length)},
                                       {"area", num(r.lambda)}});
    }
    for (const auto& r : tt.thin_collars) {
        out["thin_collars"].push_back({{"geodesic_id", r.geodesic_id},
                                       {"length", num(r.core_length)},
                                       {"half_width", num(r.half_width)},
                                       {"boundary_lengths", {num(r.boundary_lengths[0]), num(r.boundary_lengths[1])}},
                                       {"area", num(r.area)},
                                       {"separating", r.is_separating}});
    }
    print_json(out);
    return 0;
}

int cmd_isoperimetry(const RunConfig& c) {
    const Surface s = load_surface(c);
    const NetBuildParams p = net_params(c);
    const IsoperimetricReport iso =
        c.budget > 0 ? h_g_parametric(s, {c.budget, 64, c.seed}) : h_g_exact(s, c.max_pieces);
    const RegularityReport reg = regularity_constant(s, p.delta, c.max_pieces);
    json out{{"eps", num(p.eps)},
             {"delta", num(p.delta)},
             {"h_g",
              {{"value", num(iso.best_ratio)},
               {"domain", domain_json(iso.best_domain)},
               {"domains_examined", iso.domains_examined},
               {"method", to_string(iso.method)},
               {"lower_bound_certified", iso.lower_bound_certified},
               {"truncated", iso.truncated}}},
             {"cheeger_lower_bound", num(cheeger_lower_bound_from_hg(iso.best_ratio))},
             {"regularity",
              {{"worst_c", num(reg.worst_c)},
               {"witness", reg.witness_domain ? domain_json(*reg.witness_domain) : json(nullptr)},
               {"domains_examined", reg.domains_examined}}},
             {"lambda_x", num(lambda_x(s, hypmath::MargulisParam(p.eps), p.delta))}};
    print_json(out);
    return 0;
}

int cmd_net(const RunConfig& c) {
    const Surface s = load_surface(c);
    const NetBuildParams p = net_params(c);
    const NetGraph net = build_net(s, p);
    if (c.format == "dot") {
        write_net_dot(std::cout, net);
    } else if (c.format == "json") {
        json vertices = json::array();
        for (std::size_t v = 0; v < net.tags.size(); ++v) vertices.push_back(describe(net.tags[v]));
        json edges = json::array();
        for (const auto& e : net.graph.edges()) edges.push_back({e.u, e.v});
        print_json({{"eps", num(p.eps)},
                    {"delta", num(p.delta)},
                    {"vertices", vertices},
                    {"edges", edges},
                    {"max_degree", net.graph.max_degree()},
                    {"degree_bound", degree_bound(p.eps, p.delta, p.density)}});
    } else {
        write_net_edge_list(std::cout, net);
    }
    return 0;
}

int cmd_cheeger(const RunConfig& c) {
    const GraphInput in = load_graph(c);
    CheegerReport r;
    if (in.surface && c.mode.empty()) {
        r = net_cheeger_estimate(*in.surface, *in.net, {32, c.max_pieces, 0});
    } else {
        CheegerOptions opt;
        opt.mode = c.mode == "ambient" ? CheegerMode::Ambient : CheegerMode::FiniteHalf;
        if (opt.mode == CheegerMode::Ambient) {
            if (!c.interior.empty()) opt.interior = parse_id_list(c.interior);
            else if (in.surface) opt.interior = window_vertex_set(*in.surface, *in.net);
            else throw ParameterError("ambient mode on an edge list needs --interior");
        }
        if (!is_connected(in.graph)) throw InputError("graph is disconnected");
        r = cheeger(in.graph, opt);
    }
    json out{{"value", num(r.value)},
             {"witness_set", r.witness_set},
             {"witness_boundary", r.witness_boundary},
             {"mode", to_string(r.mode)},
             {"exact", r.exact},
             {"vertices", in.graph.vertex_count()}};
    out["sweep_upper_bound"] = r.sweep_upper_bound ? num(*r.sweep_upper_bound) : json(nullptr);
    print_json(out);
    return 0;
}

int cmd_hyperbolicity(const RunConfig& c) {
    const GraphInput in = load_graph(c);
    if (!is_connected(in.graph)) throw InputError("graph is disconnected");
    const HyperbolicityReport h =
        c.samples > 0 ? hyperbolicity_sampled(in.graph, c.samples, c.seed) : hyperbolicity_delta(in.graph);
    const int base = c.base.value_or(in.surface ? default_proxy_base(*in.surface, *in.net) : 0);
    if (base < 0 || base >= in.graph.vertex_count()) throw ParameterError("--base out of range");
    std::vector<int> grid;
    for (int m = 0; m <= in.graph.vertex_count(); m = m == 0 ? 1 : 2 * m) grid.push_back(m);
    const auto pole = has_pole(in.graph, base, grid);
    json out{{"delta", num(h.delta)},
             {"witness_quadruple", h.witness_quadruple},
             {"base_dependence", num(h.base_dependence)},
             {"exact", h.exact},
             {"quadruples_examined", h.quadruples_examined},
             {"pole", {{"base", base}, {"radius", pole_radius(in.graph, base)}, {"M", pole ? json(*pole) : json(nullptr)}}}};
    print_json(out);
    return 0;
}

int cmd_boundary(const RunConfig& c) {
    const GraphInput in = load_graph(c);
    if (!is_connected(in.graph)) throw InputError("graph is disconnected");
    const int base = c.base.value_or(in.surface ? default_proxy_base(*in.surface, *in.net) : 0);
    if (base < 0 || base >= in.graph.vertex_count()) throw ParameterError("--base out of range");
    const int radius = c.radius.value_or(eccentricity(in.graph, base));
    if (radius < 1 || radius > eccentricity(in.graph, base)) {
        throw ParameterError("--radius must lie between 1 and the eccentricity of the base");
    }
    if (!(c.visual_a > 1.0)) throw ParameterError("--a must exceed 1");
    const BoundaryProxy proxy = boundary_proxy(in.graph, base, radius, c.visual_a);
    const auto up = uniform_perfectness(proxy);
    if (c.format == "csv") {
        std::cout << "S,eps0,pass,failing_point,failing_eps\n";
        for (const auto& row : up.table) {
            std::cout << csv_num(row.S) << ',' << csv_num(row.eps0) << ',' << (row.pass ? "true" : "false") << ','
                      << row.failing_point << ',' << csv_num(row.failing_eps) << "\n";
        }
        return 0;
    }
    json table = json::array();
    for (const auto& row : up.table) {
        table.push_back({{"S", row.S},
                         {"eps0", row.eps0},
                         {"pass", row.pass},
                         {"failing_point", row.failing_point},
                         {"failing_eps", num(row.failing_eps)}});
    }
    json out{{"note", "sphere proxy of the boundary at infinity; empirical"},
             {"base", base},
             {"radius", radius},
             {"a", num(proxy.a)},
             {"points", proxy.points},
             {"resolution", num(proxy.resolution())},
             {"uniform_perfectness",
              {{"best_S", up.best_S ? json(*up.best_S) : json(nullptr)},
               {"best_eps0", up.best_S ? json(up.best_eps0) : json(nullptr)},
               {"reason", up.reason},
               {"table", table}}}};
    print_json(out);
    return 0;
}

int cmd_qi(const RunConfig& c) {
    const Surface s = load_surface(c);
    const NetBuildParams p = net_params(c);
    const NetGraph net = build_net(s, p);
    const QuotientMesh mesh = build_quotient_mesh(s, p, c.refinement);
    const QiEstimate q = estimate_qi_constants(net.graph, mesh.graph, mesh.net_to_mesh);
    json table = json::array();
    for (const auto& [a, b] : q.table) table.push_back({{"alpha", a}, {"beta", num(b)}});
    print_json({{"note", "grid estimate between the net graph and the surgered mesh; empirical"},
                {"alpha", num(q.alpha)},
                {"beta", num(q.beta)},
                {"fullness", num(q.fullness)},
                {"pairs", q.pairs},
                {"net_vertices", net.graph.vertex_count()},
                {"mesh_vertices", mesh.graph.vertex_count()},
                {"refinement", c.refinement},
                {"table", table}});
    return 0;
}

int cmd_sweep(const RunConfig& c) {
    const json j = read_json_file(c.input);
    if (!Family::is_family_json(j)) throw InputError(c.input + " is not a family file");
    Family fam = Family::from_json(j);
    fam.set_range(parse_range(c.n_range, fam.range()));
    const NetBuildParams p = net_params(c);
    const auto params = fam.range().values();
    const LiiReport rep = lii_verdict(fam, params, hypmath::MargulisParam(p.eps), p.delta, c.max_pieces);
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& pt : rep.points) {
            rows.push_back({{"param", pt.param},
                            {"h_g", num(pt.hg.best_ratio)},
                            {"best_domain_size", pt.hg.best_domain.pieces.size()},
                            {"worst_c", num(pt.worst_c)},
                            {"cheeger_lower_bound", num(pt.h_lower_bound)},
                            {"lambda_x", num(pt.lambda)}});
        }
        print_json({{"family", fam.name()},
                    {"verdict", to_string(rep.verdict)},
                    {"note", "trend at truncation scale; empirical"},
                    {"fit", {{"slope", num(rep.fit.slope)}, {"r2", num(rep.fit.r2)}, {"points", rep.fit.points}}},
                    {"rows", rows}});
        return 0;
    }
    std::cout << "param,h_g,best_domain_size,worst_c,verdict\n";
    for (const auto& pt : rep.points) {
        std::cout << pt.param << ',' << csv_num(pt.hg.best_ratio) << ',' << pt.hg.best_domain.pieces.size() << ','
                  << csv_num(pt.worst_c) << ',' << to_string(rep.verdict) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isoperimetry of hyperbolic surfaces built from Y-pieces, and of their net graphs"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input, "surface spec (.json), family file or edge list")->required();
        sub->add_option("--eps", cfg.eps, "Margulis parameter, 0 < eps < arcsinh 1");
        sub->add_option("--delta", cfg.delta, "net spacing, 0 < delta < delta1(eps); default 0.9 delta1(eps)");
        sub->add_option("--max-pieces", cfg.max_pieces, "largest domain enumerated (0: whole window)");
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "dot", "edges"}));
        sub->add_option("--seed", cfg.seed, "seed for randomized searches");
    };

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&);
    };
    const Command commands[] = {
        {"validate", "check a spec or family file", cmd_validate},
        {"thickthin", "collar table of the eps-thin part", cmd_thickthin},
        {"isoperimetry", "h_g and the delta-regularity constant", cmd_isoperimetry},
        {"net", "export the net graph", cmd_net},
        {"cheeger", "vertex-boundary Cheeger constant", cmd_cheeger},
        {"hyperbolicity", "four-point Gromov delta and pole radius", cmd_hyperbolicity},
        {"boundary", "boundary proxy and uniform perfectness", cmd_boundary},
        {"qi", "quasi-isometry constants, net graph vs surgered mesh", cmd_qi},
        {"sweep", "CSV sweep over a family parameter", cmd_sweep},
    };
    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const auto& cmd : commands) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        add_common(sub);
        subs.push_back({sub, &cmd});
        const std::string name = cmd.name;
        if (name == "isoperimetry") sub->add_option("--budget", cfg.budget, "parametric search restarts (0: exhaustive)");
        if (name == "net" || name == "qi") sub->add_option("--density", cfg.density, "samples per unit length multiplier");
        if (name == "qi") sub->add_option("--refinement", cfg.refinement, "mesh samples per net sample");
        if (name == "cheeger") {
            sub->add_option("--mode", cfg.mode, "search mode")->check(CLI::IsMember({"ambient", "finite_half"}));
            sub->add_option("--interior", cfg.interior, "ambient window as ids and ranges, e.g. 1..8,12");
        }
        if (name == "hyperbolicity") {
            sub->add_option("--samples", cfg.samples, "random quadruples instead of the exact loop");
            sub->add_option("--base", cfg.base, "pole base vertex");
        }
        if (name == "boundary") {
            sub->add_option("--base", cfg.base, "base vertex o");
            sub->add_option("--radius", cfg.radius, "sphere radius R (default: eccentricity of o)");
            sub->add_option("--a", cfg.visual_a, "visual parameter a > 1");
        }
        if (name == "sweep" || name == "validate") sub->add_option("--n", cfg.n_range, "parameter range lo..hi[:step]");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParameter;
    }

    try {
        for (const auto& [sub, cmd] : subs) {
            if (sub->parsed()) return cmd->run(cfg);
        }
    } catch (const ValidationError& e) {
        for (const auto& v : e.violations()) std::cerr << "violation: " << v << "\n";
        return kExitInvalid;
    } catch (const SpecFormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const GraphFormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ExprError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const json::exception& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const hypmath::DomainError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const std::length_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
