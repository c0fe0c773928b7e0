#pragma once

// JSON surface spec files:
//   {"pieces": 3,
//    "gluings": [{"a": [0, 2], "b": [1, 1], "length": 1.0}, ...],
//    "cusps": [[0, 0], [0, 1], ...],
//    "window": [1, 2]}              // optional
// Family files add "param": {"name": "n", "range": [lo, hi]} and may give
// lengths as expressions in the parameter, or name a bundled generator with
// "family": "<name>".

#include "cheegernet/surface.hpp"

#include "json.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace cheegernet {

/// Malformed file contents (bad JSON, wrong field types). Distinct from an
/// invariant violation, which `validate` reports.
class SpecFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

SurfaceSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const SurfaceSpec& spec);

nlohmann::json read_json_file(const std::filesystem::path& path);
SurfaceSpec load_spec(const std::filesystem::path& path);
void save_spec(const std::filesystem::path& path, const SurfaceSpec& spec);

}  // namespace cheegernet
