#pragma once

// A non-exceptional surface of finite type, modelled as a gluing of
// generalized Y-pieces. Each piece has three slots; a slot is either a cusp
// or one side of a glued closed geodesic.

#include "cheegernet/hypmath.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cheegernet {

inline constexpr int kSlotsPerPiece = 3;

struct SlotRef {
    int piece = 0;
    int slot = 0;

    friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

struct Gluing {
    SlotRef a;
    SlotRef b;
    double length = 0.0;  // full length L(gamma) of the glued geodesic

    friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// Raw description of a surface, as read from a spec file.
struct SurfaceSpec {
    int pieces = 0;
    std::vector<Gluing> gluings;
    std::vector<SlotRef> cusps;
    /// Pieces a domain search may use; empty means every piece. Families use
    /// it to keep padding pieces of a truncation out of the search.
    std::vector<int> window;

    friend bool operator==(const SurfaceSpec&, const SurfaceSpec&) = default;
};

/// Lists every broken invariant of a spec. Empty means valid.
std::vector<std::string> validate(const SurfaceSpec& spec);

class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

  private:
    std::vector<std::string> violations_;
};

enum class SlotKind : std::uint8_t { Cusp, Glued };

struct SlotInfo {
    SlotKind kind = SlotKind::Cusp;
    int index = 0;  // cusp id or gluing id
};

/// Validated, immutable surface with derived slot and adjacency tables.
class Surface {
  public:
    explicit Surface(SurfaceSpec spec);

    const SurfaceSpec& spec() const noexcept { return spec_; }
    int piece_count() const noexcept { return spec_.pieces; }
    int gluing_count() const noexcept { return static_cast<int>(spec_.gluings.size()); }
    int cusp_count() const noexcept { return static_cast<int>(spec_.cusps.size()); }

    const Gluing& gluing(int id) const { return spec_.gluings.at(static_cast<std::size_t>(id)); }
    const SlotInfo& slot(int piece, int slot) const {
        return slots_.at(static_cast<std::size_t>(piece * kSlotsPerPiece + slot));
    }
    /// Pieces a domain search ranges over, sorted.
    const std::vector<int>& window() const noexcept { return window_; }
    bool in_window(int piece) const { return in_window_.at(static_cast<std::size_t>(piece)) != 0; }

    /// Distinct neighbouring pieces (self excluded), sorted.
    const std::vector<int>& neighbours(int piece) const {
        return neighbours_.at(static_cast<std::size_t>(piece));
    }

    /// True when removing gluing `id` disconnects the pieces multigraph.
    bool is_separating(int id) const { return separating_.at(static_cast<std::size_t>(id)) != 0; }

  private:
    SurfaceSpec spec_;
    std::vector<SlotInfo> slots_;
    std::vector<std::vector<int>> neighbours_;
    std::vector<int> window_;
    std::vector<char> in_window_;
    std::vector<char> separating_;
};

/// Bridges of the pieces multigraph, indexed by gluing id. Parallel gluings
/// and self-gluings are never bridges.
std::vector<bool> find_bridges(int pieces, std::span<const Gluing> gluings);

// ---------------------------------------------------------------------------
// Thick-thin decomposition

struct CuspCollarRecord {
    int cusp_id = 0;
    double lambda = 0.0;
    double boundary_length = 0.0;
};

struct ThinCollarRecord {
    int geodesic_id = 0;
    double core_length = 0.0;
    double half_width = 0.0;
    double boundary_lengths[2] = {0.0, 0.0};
    double area = 0.0;
    bool is_separating = false;
};

struct ThickThin {
    hypmath::MargulisParam eps;
    std::vector<CuspCollarRecord> cusp_collars;
    std::vector<ThinCollarRecord> thin_collars;
};

/// Collars of the eps-thin part: one per cusp and one per glued geodesic
/// shorter than 2 eps.
ThickThin thick_thin(const Surface& surface, hypmath::MargulisParam eps);

// ---------------------------------------------------------------------------
// Geodesic domains (connected unions of pieces)

struct GeodesicDomain {
    std::vector<int> pieces;              // sorted
    std::vector<int> boundary_geodesics;  // gluing ids with exactly one side inside, sorted
    int enclosed_cusps = 0;               // p
    int boundary_count = 0;               // m
    int genus = 0;                        // g, from m + p - 2 + 2g = |pieces|
    double area = 0.0;                    // 2 pi |pieces|
    double boundary_length = 0.0;         // L(boundary)

    /// m + p - 2 + 2g
    int euler_defect() const noexcept { return boundary_count + enclosed_cusps - 2 + 2 * genus; }
};

/// Builds the domain spanned by `pieces`. Throws std::invalid_argument when the
/// set is empty, out of range or disconnected.
GeodesicDomain domain_from_pieces(const Surface& surface, std::vector<int> pieces);

/// True when `pieces` (sorted, unique) induces a connected subgraph.
bool is_connected_subset(const Surface& surface, std::span<const int> pieces);

/// Calls `visit` once for every connected subset of `allowed` with at most
/// `max_size` pieces. The subset passed in is sorted. Returning false from
/// `visit` stops the enumeration. Returns the number of subsets visited.
std::size_t for_each_connected_subset(const Surface& surface, std::span<const int> allowed,
                                      int max_size,
                                      const std::function<bool(std::span<const int>)>& visit);

/// Infimum of lengths of non-separating geodesics shorter than 2 delta;
/// +infinity when there are none. Requires 0 < delta < delta1(eps).
double lambda_x(const Surface& surface, hypmath::MargulisParam eps, double delta);

}  // namespace cheegernet
