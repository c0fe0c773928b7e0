#include "cheegernet/spec_io.hpp"

#include <fstream>
#include <sstream>

namespace cheegernet {

namespace {

SlotRef slot_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        throw SpecFormatError(std::string(what) + " must be a [piece, slot] pair of integers");
    }
    return SlotRef{j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

SurfaceSpec spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SpecFormatError("surface spec must be a JSON object");
    SurfaceSpec spec;
    if (!j.contains("pieces") || !j["pieces"].is_number_integer()) {
        throw SpecFormatError("\"pieces\" must be an integer count");
    }
    spec.pieces = j["pieces"].get<int>();
    if (j.contains("gluings")) {
        if (!j["gluings"].is_array()) throw SpecFormatError("\"gluings\" must be a list");
        for (const auto& g : j["gluings"]) {
            if (!g.is_object() || !g.contains("a") || !g.contains("b") || !g.contains("length")) {
                throw SpecFormatError("each gluing needs \"a\", \"b\" and \"length\"");
            }
            if (!g["length"].is_number()) {
                throw SpecFormatError("gluing length must be a number (expressions only in family files)");
            }
            spec.gluings.push_back(
                {slot_from_json(g["a"], "\"a\""), slot_from_json(g["b"], "\"b\""), g["length"].get<double>()});
        }
    }
    if (j.contains("cusps")) {
        if (!j["cusps"].is_array()) throw SpecFormatError("\"cusps\" must be a list");
        for (const auto& c : j["cusps"]) spec.cusps.push_back(slot_from_json(c, "cusp"));
    }
    if (j.contains("window")) {
        if (!j["window"].is_array()) throw SpecFormatError("\"window\" must be a list of piece ids");
        for (const auto& p : j["window"]) {
            if (!p.is_number_integer()) throw SpecFormatError("\"window\" entries must be integers");
            spec.window.push_back(p.get<int>());
        }
    }
    return spec;
}

nlohmann::json spec_to_json(const SurfaceSpec& spec) {
    nlohmann::json j;
    j["pieces"] = spec.pieces;
    j["gluings"] = nlohmann::json::array();
    for (const auto& g : spec.gluings) {
        j["gluings"].push_back({{"a", {g.a.piece, g.a.slot}}, {"b", {g.b.piece, g.b.slot}}, {"length", g.length}});
    }
    j["cusps"] = nlohmann::json::array();
    for (const auto& c : spec.cusps) j["cusps"].push_back({c.piece, c.slot});
    if (!spec.window.empty()) j["window"] = spec.window;
    return j;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SpecFormatError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecFormatError(path.string() + ": " + e.what());
    }
}

SurfaceSpec load_spec(const std::filesystem::path& path) { return spec_from_json(read_json_file(path)); }

void save_spec(const std::filesystem::path& path, const SurfaceSpec& spec) {
    std::ofstream out(path);
    if (!out) throw SpecFormatError("cannot write " + path.string());
    out << spec_to_json(spec).dump(2) << "\n";
}

}  // namespace cheegernet
