#include "doctest.h"

#include "cheegernet/families.hpp"
#include "cheegernet/spec_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

using namespace cheegernet;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(CHEEGERNET_CLI) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(CHEEGERNET_DATA_DIR) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("cheegernet_cli_" + name);
}

}  // namespace

TEST_CASE("sweep reproduces the flute chain") {
    const auto r = run("sweep " + data("flute.family.json") + " --n 2..20 --format csv");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "param,h_g,best_domain_size,worst_c,verdict");
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string param, hg;
        std::getline(row, param, ',');
        std::getline(row, hg, ',');
        const int n = std::stoi(param);
        CHECK(std::abs(std::stod(hg) - 1.0 / (std::numbers::pi * n)) < 1e-9);
        ++rows;
    }
    CHECK(rows == 19);
}

TEST_CASE("qi on the flute chain is finite") {
    const auto path = scratch("flute10.json");
    save_spec(path, flute_spec(10));
    const auto r = run("qi " + path.string());
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(std::isfinite(j["alpha"].get<double>()));
    CHECK(std::isfinite(j["beta"].get<double>()));
    CHECK(std::isfinite(j["fullness"].get<double>()));
    std::filesystem::remove(path);
}

TEST_CASE("cheeger of K4") {
    const auto r = run("cheeger " + data("k4.edges") + " --mode finite_half");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["value"].get<double>() == 1.0);
}

TEST_CASE("exit codes") {
    const auto bad = scratch("bad.json");
    std::ofstream(bad) << R"({"pieces": 1, "gluings": [{"a": [0, 0], "b": [0, 0], "length": 1}], "cusps": [[0, 1]]})";
    const auto v = run("validate " + bad.string());
    CHECK(v.code == 2);
    CHECK(v.out.find("involution") != std::string::npos);
    CHECK(run("thickthin " + bad.string()).code == 2);
    std::filesystem::remove(bad);

    CHECK(run("net " + data("flute.json") + " --delta 5").code == 3);
    CHECK(run("isoperimetry " + data("flute.json") + " --eps 2").code == 3);
    CHECK(run("validate " + data("flute.json")).code == 0);
    CHECK(run("validate /nonexistent.json").code == 2);
}

TEST_CASE("thickthin on the bundled flute") {
    const auto r = run("thickthin " + data("flute.json"));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    const auto spec = load_spec(data("flute.json"));
    CHECK(j["cusp_collars"].size() == static_cast<std::size_t>(spec.pieces));
}

TEST_CASE("outputs are reproducible") {
    for (const std::string args :
         {"net " + data("flute.json"), "isoperimetry " + data("flute.json") + " --budget 4 --seed 9",
          "hyperbolicity " + data("k4.edges") + " --samples 500 --seed 3", "boundary " + data("flute.json"),
          "sweep " + data("tree.family.json") + " --n 6..14"}) {
        const auto a = run(args);
        const auto b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("export and re-import") {
    const auto net = run("net " + data("flute.json"));
    REQUIRE(net.code == 0);
    const auto edges = scratch("flute.edges");
    std::ofstream(edges) << net.out;
    const auto again = run("net " + data("flute.json"));
    CHECK(again.out == net.out);
    const auto c = run("hyperbolicity " + edges.string());
    CHECK(c.code == 0);
    const auto d = run("hyperbolicity " + data("flute.json"));
    CHECK(json::parse(c.out)["delta"] == json::parse(d.out)["delta"]);
    std::filesystem::remove(edges);

    for (const char* name : {"flute.json"}) {
        const auto spec = load_spec(data(name));
        const auto copy = scratch(name);
        save_spec(copy, spec);
        CHECK(load_spec(copy) == spec);
        std::filesystem::remove(copy);
    }
}
