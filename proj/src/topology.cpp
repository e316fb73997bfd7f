#include "leosim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leosim {

namespace {

void sort_unique(std::vector<Edge>& edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

// Node indices of satellites follow orbit-major rank, so the rank of
// member s of orbit o is the running offset of o plus s.
std::vector<std::uint32_t> orbit_offsets(const ConstellationGeometry& geometry) {
    std::vector<std::uint32_t> offsets;
    offsets.reserve(geometry.orbits.size());
    std::uint32_t off = 0;
    for (const auto& orbit : geometry.orbits) {
        offsets.push_back(off);
        off += static_cast<std::uint32_t>(orbit.members.size());
    }
    return offsets;
}

} // namespace

std::optional<std::uint32_t> NodeIndex::find(const std::string& name) const {
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].name == name) return i;
    }
    return std::nullopt;
}

NodeIndex NodeIndex::build(const ConstellationGeometry& geometry,
                           const std::vector<OrbitalElements>& elements,
                           const std::vector<GroundSegment>& grounds) {
    NodeIndex index;
    for (const auto& orbit : geometry.orbits) {
        for (std::uint32_t el_idx : orbit.members) {
            const auto& el = elements[el_idx];
            index.nodes.push_back({Kind::Satellite, el.name, el.satellite_id, el_idx});
        }
    }
    index.satellite_count = static_cast<std::uint32_t>(index.nodes.size());
    for (std::uint32_t g = 0; g < grounds.size(); ++g) {
        const auto& seg = grounds[g];
        index.nodes.push_back({seg.role == GroundRole::Terminal ? Kind::Terminal : Kind::Gateway,
                               seg.id, 0, g});
    }
    return index;
}

bool ConnectivityMatrix::at(std::uint32_t i, std::uint32_t j) const {
    if (i == j) return false;
    return std::binary_search(edges.begin(), edges.end(), Edge{i, j});
}

std::vector<Edge> build_isl_intra_orbit(const ConstellationGeometry& geometry) {
    const auto offsets = orbit_offsets(geometry);
    std::vector<Edge> edges;
    for (std::size_t o = 0; o < geometry.orbits.size(); ++o) {
        const std::uint32_t k = static_cast<std::uint32_t>(geometry.orbits[o].members.size());
        if (k < 3) {
            throw std::invalid_argument("intra-orbit ring requires >= 3 satellites per orbit, "
                                        "orbit " +
                                        std::to_string(o) + " has " + std::to_string(k));
        }
        for (std::uint32_t s = 0; s < k; ++s) {
            edges.emplace_back(offsets[o] + s, offsets[o] + (s + 1) % k);
        }
    }
    sort_unique(edges);
    return edges;
}

std::vector<Edge> build_isl_pattern(const ConstellationGeometry& geometry, IslPattern pattern,
                                    int cross_index_offset) {
    std::vector<Edge> edges = build_isl_intra_orbit(geometry);
    if (pattern == IslPattern::IntraOrbit) return edges;

    const std::size_t orbit_count = geometry.orbits.size();
    if (orbit_count < 2) {
        throw std::invalid_argument("grid pattern requires >= 2 orbits");
    }
    const auto offsets = orbit_offsets(geometry);
    for (std::size_t o = 0; o < orbit_count; ++o) {
        const std::size_t next = (o + 1) % orbit_count;
        const std::uint32_t k = static_cast<std::uint32_t>(geometry.orbits[o].members.size());
        const std::uint32_t kn = static_cast<std::uint32_t>(geometry.orbits[next].members.size());
        for (std::uint32_t s = 0; s < k; ++s) {
            const std::uint32_t partner =
                static_cast<std::uint32_t>(((s + cross_index_offset) % kn + kn) % kn);
            edges.emplace_back(offsets[o] + s, offsets[next] + partner);
        }
    }
    sort_unique(edges);
    return edges;
}

namespace {

std::vector<Edge> filter_isl_edges(std::vector<Edge> edges,
                                   const std::vector<SatelliteState>& sat_states,
                                   const IslLimits& limits) {
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (const Edge& e : edges) {
        const auto& sa = sat_states[e.a];
        const auto& sb = sat_states[e.b];
        if ((sa.ecef_km - sb.ecef_km).norm() > limits.max_range_km) continue;
        if (limits.latitude_mask_deg &&
            std::abs(sa.lat_deg) > *limits.latitude_mask_deg &&
            std::abs(sb.lat_deg) > *limits.latitude_mask_deg) {
            continue;
        }
        kept.push_back(e);
    }
    return kept;
}

} // namespace

std::vector<Edge> build_isl_grid(const ConstellationGeometry& geometry,
                                 const std::vector<SatelliteState>& sat_states,
                                 const IslLimits& limits, int cross_index_offset) {
    return filter_isl_edges(build_isl_pattern(geometry, IslPattern::Grid, cross_index_offset),
                            sat_states, limits);
}

GroundSite GroundSite::from_segment(const GroundSegment& seg, std::uint32_t node_index) {
    GroundSite site;
    site.geodetic = {seg.lat_deg, seg.lon_deg, seg.alt_m / 1000.0};
    site.ecef_km = geodetic_to_ecef(site.geodetic);
    site.node = node_index;
    return site;
}

std::vector<VisibleSat> visible_satellites(const GroundSite& site,
                                           const std::vector<SatelliteState>& sat_states,
                                           double min_elevation_deg, const NodeIndex& index) {
    if (min_elevation_deg < 0.0 || min_elevation_deg >= 90.0) {
        throw std::invalid_argument("min elevation must be in [0, 90)");
    }
    std::vector<VisibleSat> visible;
    for (std::uint32_t s = 0; s < sat_states.size(); ++s) {
        const double elev = elevation_deg(site.ecef_km, site.geodetic, sat_states[s].ecef_km);
        if (elev >= min_elevation_deg) {
            visible.push_back({s, elev, (sat_states[s].ecef_km - site.ecef_km).norm()});
        }
    }
    std::sort(visible.begin(), visible.end(), [&](const VisibleSat& a, const VisibleSat& b) {
        if (a.distance_km != b.distance_km) return a.distance_km < b.distance_km;
        return index.nodes[a.sat_node].satellite_id < index.nodes[b.sat_node].satellite_id;
    });
    return visible;
}

AttachmentState select_attachment(HandoverStrategy strategy,
                                  const std::vector<VisibleSat>& visible,
                                  const AttachmentState& prior, UtcMillis t) {
    if (visible.empty()) {
        if (!prior.sat_node) return prior; // already unattached, nothing changes
        return {std::nullopt, t};
    }

    if (strategy == HandoverStrategy::LongestAttachment && prior.sat_node) {
        for (const auto& v : visible) {
            if (v.sat_node == *prior.sat_node) return prior; // still in view, keep it
        }
    }
    const std::uint32_t nearest = visible.front().sat_node;
    if (prior.sat_node && *prior.sat_node == nearest) return prior;
    return {nearest, t};
}

ConnectivityResult build_connectivity(UtcMillis t, const ConstellationGeometry& geometry,
                                      const std::vector<SatelliteState>& sat_states,
                                      const std::vector<GroundSite>& grounds,
                                      const TopologyConfig& config, const NodeIndex& index,
                                      const std::vector<AttachmentState>& prior) {
    ConnectivityResult result;
    result.matrix.n = index.size();

    if (config.pattern == IslPattern::Grid) {
        result.matrix.edges =
            build_isl_grid(geometry, sat_states, config.limits, config.cross_index_offset);
    } else {
        result.matrix.edges = filter_isl_edges(build_isl_intra_orbit(geometry), sat_states,
                                               config.limits);
    }

    result.attachments.resize(grounds.size());
    for (std::size_t g = 0; g < grounds.size(); ++g) {
        const auto visible =
            visible_satellites(grounds[g], sat_states, config.min_elevation_deg, index);
        const AttachmentState prior_state =
            g < prior.size() ? prior[g] : AttachmentState{};
        result.attachments[g] = select_attachment(config.handover, visible, prior_state, t);
        if (result.attachments[g].sat_node) {
            result.matrix.edges.emplace_back(grounds[g].node, *result.attachments[g].sat_node);
        }
    }
    std::sort(result.matrix.edges.begin(), result.matrix.edges.end());
    return result;
}

} // namespace leosim
