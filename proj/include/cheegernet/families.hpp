#pragma once

// Parametrized truncation families. An infinite surface is studied through a
// sequence of finite surfaces; each instance marks the pieces that stand in
// for the infinite surface as its window and closes the rest off with
// padding pieces.

#include "cheegernet/expr.hpp"
#include "cheegernet/surface.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace cheegernet {

/// Chain of one-cusped pieces joined along unit geodesics, capped at both
/// ends by two-cusped pieces. Window: the n chain pieces.
SurfaceSpec flute_spec(int n);

/// Chain of n pieces with unit gluings; every chain piece carries a
/// two-cusped bulb attached along a geodesic of length 1/(2n).
/// Window: chain and bulbs.
SurfaceSpec shrinking_spec(int n);

/// First n pieces of the 3-regular tree of pants (breadth-first), unit
/// lengths, every open slot capped. Window: the n tree pieces.
SurfaceSpec tree_spec(int n);

/// n handles in a row: pieces A_i, B_i glued twice along geodesics of length
/// 0.1 (non-separating), consecutive handles joined by unit geodesics.
/// Window: all A_i, B_i.
SurfaceSpec handles_spec(int n);

struct ParamRange {
    int lo = 1;
    int hi = 1;
    int step = 1;

    std::vector<int> values() const;
};

class Family {
  public:
    /// Bundled generator: "flute", "shrinking", "tree" or "handles".
    static Family builtin(const std::string& name);
    /// Family file; see spec_io.hpp for the layout.
    static Family from_json(const nlohmann::json& j);
    static bool is_family_json(const nlohmann::json& j);

    const std::string& name() const noexcept { return name_; }
    const std::string& param_name() const noexcept { return param_; }
    const ParamRange& range() const noexcept { return range_; }
    void set_range(ParamRange r) { range_ = r; }

    SurfaceSpec instance(int n) const;
    nlohmann::json to_json() const;

    static const std::vector<std::string>& builtin_names();

  private:
    std::string name_;
    std::string param_ = "n";
    ParamRange range_;
    bool templated_ = false;
    nlohmann::json template_;
    std::vector<Expr> lengths_;
};

}  // namespace cheegernet
