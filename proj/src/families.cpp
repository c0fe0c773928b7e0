#include "cheegernet/families.hpp"

#include "cheegernet/spec_io.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace cheegernet {

namespace {

void require_positive(int n, const char* family) {
    if (n < 1) throw std::invalid_argument(std::string(family) + " family needs n >= 1");
}

}  // namespace

SurfaceSpec flute_spec(int n) {
    require_positive(n, "flute");
    SurfaceSpec s;
    s.pieces = n + 2;
    const int right = n + 1;
    s.cusps = {{0, 0}, {0, 1}};
    for (int i = 1; i <= n; ++i) {
        s.cusps.push_back({i, 0});
        s.window.push_back(i);
    }
    s.cusps.push_back({right, 0});
    s.cusps.push_back({right, 2});
    for (int i = 0; i <= n; ++i) {
        const SlotRef from = i == 0 ? SlotRef{0, 2} : SlotRef{i, 2};
        s.gluings.push_back({from, {i + 1, 1}, 1.0});
    }
    return s;
}

SurfaceSpec shrinking_spec(int n) {
    require_positive(n, "shrinking");
    SurfaceSpec s;
    s.pieces = 2 * n + 2;
    const int right = n + 1;
    const double short_length = 1.0 / (2.0 * n);
    s.cusps = {{0, 0}, {0, 1}};
    for (int i = 0; i <= n; ++i) {
        const SlotRef from = i == 0 ? SlotRef{0, 2} : SlotRef{i, 2};
        s.gluings.push_back({from, {i + 1, 1}, 1.0});
    }
    s.cusps.push_back({right, 0});
    s.cusps.push_back({right, 2});
    for (int i = 1; i <= n; ++i) {
        const int bulb = n + 1 + i;
        s.gluings.push_back({{i, 0}, {bulb, 2}, short_length});
        s.cusps.push_back({bulb, 0});
        s.cusps.push_back({bulb, 1});
        s.window.push_back(i);
    }
    for (int i = 1; i <= n; ++i) s.window.push_back(n + 1 + i);
    return s;
}

SurfaceSpec tree_spec(int n) {
    require_positive(n, "tree");
    SurfaceSpec s;
    std::deque<SlotRef> open{{0, 0}, {0, 1}, {0, 2}};
    int pieces = 1;
    while (pieces < n) {
        const SlotRef parent = open.front();
        open.pop_front();
        s.gluings.push_back({parent, {pieces, 0}, 1.0});
        open.push_back({pieces, 1});
        open.push_back({pieces, 2});
        ++pieces;
    }
    for (int i = 0; i < n; ++i) s.window.push_back(i);
    for (const auto& slot : open) {
        s.gluings.push_back({slot, {pieces, 0}, 1.0});
        s.cusps.push_back({pieces, 1});
        s.cusps.push_back({pieces, 2});
        ++pieces;
    }
    s.pieces = pieces;
    return s;
}

SurfaceSpec handles_spec(int n) {
    require_positive(n, "handles");
    constexpr double kHandleLength = 0.1;
    SurfaceSpec s;
    s.pieces = 2 * n + 2;
    const int right = 2 * n + 1;
    s.cusps = {{0, 0}, {0, 1}};
    SlotRef prev{0, 2};
    for (int i = 1; i <= n; ++i) {
        const int a = 2 * i - 1;
        const int b = 2 * i;
        s.gluings.push_back({prev, {a, 0}, 1.0});
        s.gluings.push_back({{a, 1}, {b, 0}, kHandleLength});
        s.gluings.push_back({{a, 2}, {b, 1}, kHandleLength});
        prev = {b, 2};
        s.window.push_back(a);
        s.window.push_back(b);
    }
    s.gluings.push_back({prev, {right, 1}, 1.0});
    s.cusps.push_back({right, 0});
    s.cusps.push_back({right, 2});
    return s;
}

std::vector<int> ParamRange::values() const {
    if (step < 1) throw std::invalid_argument("parameter step must be positive");
    std::vector<int> out;
    for (int v = lo; v <= hi; v += step) out.push_back(v);
    return out;
}

const std::vector<std::string>& Family::builtin_names() {
    static const std::vector<std::string> names{"flute", "shrinking", "tree", "handles"};
    return names;
}

Family Family::builtin(const std::string& name) {
    Family f;
    f.name_ = name;
    if (name == "flute") f.range_ = {2, 20, 1};
    else if (name == "shrinking") f.range_ = {4, 12, 1};
    else if (name == "tree") f.range_ = {6, 30, 4};
    else if (name == "handles") f.range_ = {2, 10, 1};
    else throw std::invalid_argument("unknown family '" + name + "'");
    return f;
}

bool Family::is_family_json(const nlohmann::json& j) { return j.is_object() && j.contains("param"); }

Family Family::from_json(const nlohmann::json& j) {
    if (!is_family_json(j)) throw SpecFormatError("family file needs a \"param\" object");
    const auto& p = j["param"];
    Family f;
    if (j.contains("family")) {
        if (!j["family"].is_string()) throw SpecFormatError("\"family\" must be a string");
        try {
            f = builtin(j["family"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw SpecFormatError(e.what());
        }
    } else {
        f.name_ = j.value("name", std::string("custom"));
        f.templated_ = true;
        f.template_ = j;
    }
    if (p.contains("name")) {
        if (!p["name"].is_string()) throw SpecFormatError("param name must be a string");
        f.param_ = p["name"].get<std::string>();
    }
    if (p.contains("range")) {
        const auto& r = p["range"];
        if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer()) {
            throw SpecFormatError("param range must be [lo, hi] integers");
        }
        f.range_.lo = r[0].get<int>();
        f.range_.hi = r[1].get<int>();
        f.range_.step = p.value("step", 1);
    }
    if (f.templated_) {
        if (!j.contains("gluings") || !j["gluings"].is_array()) {
            throw SpecFormatError("family template needs a \"gluings\" list");
        }
        for (const auto& g : j["gluings"]) {
            if (!g.is_object() || !g.contains("length")) throw SpecFormatError("each gluing needs \"length\"");
            const auto& len = g["length"];
            try {
                if (len.is_number()) {
                    f.lengths_.push_back(Expr::parse(len.dump(), f.param_));
                } else if (len.is_string()) {
                    f.lengths_.push_back(Expr::parse(len.get<std::string>(), f.param_));
                } else {
                    throw SpecFormatError("gluing length must be a number or an expression string");
                }
            } catch (const ExprError& e) {
                throw SpecFormatError(e.what());
            }
        }
    }
    return f;
}

SurfaceSpec Family::instance(int n) const {
    if (!templated_) {
        if (name_ == "flute") return flute_spec(n);
        if (name_ == "shrinking") return shrinking_spec(n);
        if (name_ == "tree") return tree_spec(n);
        return handles_spec(n);
    }
    nlohmann::json j = template_;
    j.erase("param");
    j.erase("name");
    for (std::size_t i = 0; i < lengths_.size(); ++i) {
        j["gluings"][i]["length"] = lengths_[i].eval(static_cast<double>(n));
    }
    return spec_from_json(j);
}

nlohmann::json Family::to_json() const {
    nlohmann::json j;
    if (templated_) {
        j = template_;
    } else {
        j["family"] = name_;
    }
    j["param"] = {{"name", param_}, {"range", {range_.lo, range_.hi}}};
    if (range_.step != 1) j["param"]["step"] = range_.step;
    return j;
}

}  // namespace cheegernet
