#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leosim/constellation.hpp"
#include "leosim/geodesy.hpp"
#include "leosim/propagation.hpp"
#include "leosim/scenario.hpp"

namespace leosim {

/// Undirected edge between dense node indices, stored with a < b.
struct Edge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;

    Edge() = default;
    Edge(std::uint32_t i, std::uint32_t j) : a(std::min(i, j)), b(std::max(i, j)) {}
    auto operator<=>(const Edge&) const = default;
};

/// Dense node numbering, stable across all timesteps of a scenario:
/// satellites first in orbit-major order, then ground segments in
/// declaration order.
struct NodeIndex {
    enum class Kind : std::uint8_t { Satellite = 0, Terminal = 1, Gateway = 2 };
    struct Node {
        Kind kind = Kind::Satellite;
        std::string name;
        std::uint32_t satellite_id = 0; // catalog id for satellites, 0 otherwise
        std::uint32_t ref = 0;          // element index / ground-segment index
    };
    std::vector<Node> nodes;
    std::uint32_t satellite_count = 0;

    std::uint32_t size() const { return static_cast<std::uint32_t>(nodes.size()); }
    bool is_satellite(std::uint32_t i) const { return i < satellite_count; }
    std::optional<std::uint32_t> find(const std::string& name) const;

    static NodeIndex build(const ConstellationGeometry& geometry,
                           const std::vector<OrbitalElements>& elements,
                           const std::vector<GroundSegment>& grounds);
};

/// Boolean N x N adjacency, stored as a sorted undirected edge list.
struct ConnectivityMatrix {
    std::uint32_t n = 0;
    std::vector<Edge> edges; // sorted, unique

    bool at(std::uint32_t i, std::uint32_t j) const;
};

/// One inter-satellite ring per orbit: every satellite links to its
/// predecessor and successor in the true-anomaly order. Edges are in
/// satellite-node-index space. Throws if any orbit has fewer than 3
/// members.
std::vector<Edge> build_isl_intra_orbit(const ConstellationGeometry& geometry);

struct IslLimits {
    double max_range_km = 5000.0;
    std::optional<double> latitude_mask_deg;
};

/// Grid (+Grid) pattern: the intra-orbit rings plus one link from each
/// satellite to the same positional index in the next orbit (wrapping,
/// so the pattern is a torus), filtered by the feasibility limits at
/// the states' timestep. cross_index_offset shifts the positional pairing
/// for phased shells.
std::vector<Edge> build_isl_grid(const ConstellationGeometry& geometry,
                                 const std::vector<SatelliteState>& sat_states,
                                 const IslLimits& limits, int cross_index_offset = 0);

/// Unfiltered pattern edges (what the grid/ring would be with no
/// feasibility limits); the denominator for churn statistics.
std::vector<Edge> build_isl_pattern(const ConstellationGeometry& geometry, IslPattern pattern,
                                    int cross_index_offset = 0);

struct GroundSite {
    Geodetic geodetic;
    Vec3 ecef_km;
    std::uint32_t node = 0; // dense node index

    static GroundSite from_segment(const GroundSegment& seg, std::uint32_t node_index);
};

struct VisibleSat {
    std::uint32_t sat_node = 0;
    double elevation_deg = 0.0;
    double distance_km = 0.0;
};

/// Satellites above the site's local horizon by at least
/// min_elevation_deg, sorted by distance ascending (ties by satellite
/// catalog id). sat_states is indexed by satellite node index.
std::vector<VisibleSat> visible_satellites(const GroundSite& site,
                                           const std::vector<SatelliteState>& sat_states,
                                           double min_elevation_deg, const NodeIndex& index);

struct AttachmentState {
    std::optional<std::uint32_t> sat_node;
    UtcMillis since = 0;

    bool operator==(const AttachmentState&) const = default;
};

/// Picks the satellite a ground segment attaches to this instant.
/// DistanceBased: nearest visible. LongestAttachment: the prior
/// satellite while it stays visible, else nearest. Returns the updated
/// attachment record.
AttachmentState select_attachment(HandoverStrategy strategy,
                                  const std::vector<VisibleSat>& visible,
                                  const AttachmentState& prior, UtcMillis t);

struct TopologyConfig {
    IslPattern pattern = IslPattern::Grid;
    IslLimits limits;
    double min_elevation_deg = 25.0;
    HandoverStrategy handover = HandoverStrategy::DistanceBased;
    int cross_index_offset = 0;
};

struct ConnectivityResult {
    ConnectivityMatrix matrix;
    std::vector<AttachmentState> attachments; // one per ground site
};

/// ISL edges per the configured pattern and limits, plus at most one
/// GSL per ground site via select_attachment.
ConnectivityResult build_connectivity(UtcMillis t, const ConstellationGeometry& geometry,
                                      const std::vector<SatelliteState>& sat_states,
                                      const std::vector<GroundSite>& grounds,
                                      const TopologyConfig& config, const NodeIndex& index,
                                      const std::vector<AttachmentState>& prior);

} // namespace leosim
