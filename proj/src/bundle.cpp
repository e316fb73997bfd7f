#include "leosim/bundle.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "leosim/errors.hpp"

namespace leosim {

namespace {

constexpr std::uint32_t kMagic = 0x4253454Cu; // "LESB" little-endian

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t size) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= data[i];
        h *= 1099511628211ull;
    }
    return h;
}

class Writer {
public:
    std::vector<std::uint8_t> bytes;

    void u8(std::uint8_t v) { bytes.push_back(v); }
    void u32(std::uint32_t v) { raw(&v, 4); }
    void u64(std::uint64_t v) { raw(&v, 8); }
    void i64(std::int64_t v) { raw(&v, 8); }
    void f64(double v) { raw(&v, 8); } // IEEE-754 bit pattern, exact round-trip
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        bytes.insert(bytes.end(), s.begin(), s.end());
    }
    void opt_u32(const std::optional<std::uint32_t>& v) {
        u8(v ? 1 : 0);
        u32(v ? *v : 0);
    }
    void opt_f64(const std::optional<double>& v) {
        u8(v ? 1 : 0);
        f64(v ? *v : 0.0);
    }

private:
    void raw(const void* p, std::size_t n) {
        static_assert(std::endian::native == std::endian::little,
                      "bundle encoding assumes a little-endian host");
        const auto* b = static_cast<const std::uint8_t*>(p);
        bytes.insert(bytes.end(), b, b + n);
    }
};

class Reader {
public:
    Reader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

    std::uint8_t u8() { return take(1)[0]; }
    std::uint32_t u32() { return load<std::uint32_t>(); }
    std::uint64_t u64() { return load<std::uint64_t>(); }
    std::int64_t i64() { return load<std::int64_t>(); }
    double f64() { return load<double>(); }
    std::string str() {
        const std::uint32_t n = u32();
        const std::uint8_t* p = take(n);
        return std::string(reinterpret_cast<const char*>(p), n);
    }
    std::optional<std::uint32_t> opt_u32() {
        const bool has = u8() != 0;
        const std::uint32_t v = u32();
        return has ? std::optional<std::uint32_t>(v) : std::nullopt;
    }
    std::optional<double> opt_f64() {
        const bool has = u8() != 0;
        const double v = f64();
        return has ? std::optional<double>(v) : std::nullopt;
    }
    std::size_t offset() const { return pos_; }

private:
    template <typename T>
    T load() {
        T v;
        std::memcpy(&v, take(sizeof(T)), sizeof(T));
        return v;
    }
    const std::uint8_t* take(std::size_t n) {
        if (pos_ + n > size_) throw BundleError("bundle file is truncated");
        const std::uint8_t* p = data_ + pos_;
        pos_ += n;
        return p;
    }
    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

void write_link_record(Writer& w, const LinkRecord& l) {
    w.u32(l.i);
    w.u32(l.j);
    w.f64(l.latency_ms);
    w.f64(l.capacity_mbps);
    w.opt_f64(l.snr_db);
}

LinkRecord read_link_record(Reader& r) {
    LinkRecord l;
    l.i = r.u32();
    l.j = r.u32();
    l.latency_ms = r.f64();
    l.capacity_mbps = r.f64();
    l.snr_db = r.opt_f64();
    return l;
}

void write_path(Writer& w, const std::optional<std::vector<std::uint32_t>>& path) {
    w.u8(path ? 1 : 0);
    if (path) {
        w.u32(static_cast<std::uint32_t>(path->size()));
        for (std::uint32_t n : *path) w.u32(n);
    }
}

std::optional<std::vector<std::uint32_t>> read_path(Reader& r) {
    if (r.u8() == 0) return std::nullopt;
    const std::uint32_t n = r.u32();
    std::vector<std::uint32_t> path(n);
    for (auto& v : path) v = r.u32();
    return path;
}

void write_snapshot(Writer& w, const TopologySnapshot& s) {
    w.i64(s.t);
    w.u32(s.node_count);
    w.u32(static_cast<std::uint32_t>(s.links.size()));
    for (const auto& l : s.links) write_link_record(w, l);
    w.u32(static_cast<std::uint32_t>(s.routing.next_hop.size()));
    for (const auto& [key, next] : s.routing.next_hop) {
        w.u32(key.first);
        w.u32(key.second);
        w.u32(next);
    }
    w.u32(static_cast<std::uint32_t>(s.routing.flow_paths.size()));
    for (const auto& p : s.routing.flow_paths) write_path(w, p);
    w.u32(static_cast<std::uint32_t>(s.attachments.size()));
    for (const auto& a : s.attachments) {
        w.opt_u32(a.sat_node);
        w.i64(a.since);
    }
}

TopologySnapshot read_snapshot(Reader& r) {
    TopologySnapshot s;
    s.t = r.i64();
    s.routing.t = s.t;
    s.node_count = r.u32();
    const std::uint32_t links = r.u32();
    s.links.reserve(links);
    for (std::uint32_t i = 0; i < links; ++i) s.links.push_back(read_link_record(r));
    const std::uint32_t entries = r.u32();
    for (std::uint32_t i = 0; i < entries; ++i) {
        const std::uint32_t node = r.u32();
        const std::uint32_t dest = r.u32();
        const std::uint32_t next = r.u32();
        s.routing.next_hop[{node, dest}] = next;
    }
    const std::uint32_t flows = r.u32();
    s.routing.flow_paths.reserve(flows);
    for (std::uint32_t i = 0; i < flows; ++i) s.routing.flow_paths.push_back(read_path(r));
    const std::uint32_t grounds = r.u32();
    s.attachments.resize(grounds);
    for (auto& a : s.attachments) {
        a.sat_node = r.opt_u32();
        a.since = r.i64();
    }
    return s;
}

void write_delta(Writer& w, const LinkDelta& d) {
    w.i64(d.t);
    w.u32(static_cast<std::uint32_t>(d.added.size()));
    for (const auto& l : d.added) write_link_record(w, l);
    w.u32(static_cast<std::uint32_t>(d.removed.size()));
    for (const auto& e : d.removed) {
        w.u32(e.a);
        w.u32(e.b);
    }
    w.u32(static_cast<std::uint32_t>(d.modified.size()));
    for (const auto& l : d.modified) write_link_record(w, l);
    w.u32(static_cast<std::uint32_t>(d.routing_changes.size()));
    for (const auto& rc : d.routing_changes) {
        w.u32(rc.node);
        w.u32(rc.dest);
        w.opt_u32(rc.next);
    }
    w.u32(static_cast<std::uint32_t>(d.path_changes.size()));
    for (const auto& pc : d.path_changes) {
        w.u32(pc.flow_index);
        write_path(w, pc.old_path);
        write_path(w, pc.new_path);
    }
    w.u32(static_cast<std::uint32_t>(d.attachment_changes.size()));
    for (const auto& ac : d.attachment_changes) {
        w.u32(ac.ground);
        w.opt_u32(ac.state.sat_node);
        w.i64(ac.state.since);
    }
}

LinkDelta read_delta(Reader& r) {
    LinkDelta d;
    d.t = r.i64();
    const std::uint32_t added = r.u32();
    d.added.reserve(added);
    for (std::uint32_t i = 0; i < added; ++i) d.added.push_back(read_link_record(r));
    const std::uint32_t removed = r.u32();
    d.removed.reserve(removed);
    for (std::uint32_t i = 0; i < removed; ++i) {
        const std::uint32_t a = r.u32();
        const std::uint32_t b = r.u32();
        d.removed.push_back(Edge{a, b});
    }
    const std::uint32_t modified = r.u32();
    d.modified.reserve(modified);
    for (std::uint32_t i = 0; i < modified; ++i) d.modified.push_back(read_link_record(r));
    const std::uint32_t rcs = r.u32();
    d.routing_changes.reserve(rcs);
    for (std::uint32_t i = 0; i < rcs; ++i) {
        LinkDelta::RouteChange rc;
        rc.node = r.u32();
        rc.dest = r.u32();
        rc.next = r.opt_u32();
        d.routing_changes.push_back(rc);
    }
    const std::uint32_t pcs = r.u32();
    d.path_changes.reserve(pcs);
    for (std::uint32_t i = 0; i < pcs; ++i) {
        LinkDelta::PathChange pc;
        pc.flow_index = r.u32();
        pc.old_path = read_path(r);
        pc.new_path = read_path(r);
        d.path_changes.push_back(std::move(pc));
    }
    const std::uint32_t acs = r.u32();
    d.attachment_changes.reserve(acs);
    for (std::uint32_t i = 0; i < acs; ++i) {
        LinkDelta::AttachmentChange ac;
        ac.ground = r.u32();
        ac.state.sat_node = r.opt_u32();
        ac.state.since = r.i64();
        d.attachment_changes.push_back(ac);
    }
    return d;
}

} // namespace

std::vector<std::uint8_t> encode_bundle(const ScenarioBundle& bundle) {
    Writer w;
    w.u32(kMagic);
    w.u32(ScenarioBundle::kSchemaVersion);
    w.str(bundle.config_yaml);
    w.u32(static_cast<std::uint32_t>(bundle.node_index.nodes.size()));
    for (const auto& node : bundle.node_index.nodes) {
        w.u8(static_cast<std::uint8_t>(node.kind));
        w.str(node.name);
        w.u32(node.satellite_id);
        w.u32(node.ref);
    }
    w.u32(bundle.node_index.satellite_count);
    w.i64(bundle.start);
    w.u32(bundle.interval_ms);
    w.u32(bundle.tick_count);
    w.u32(bundle.total_isl_count);

    w.u8(bundle.relevance.enabled ? 1 : 0);
    w.u32(static_cast<std::uint32_t>(bundle.relevance.nodes.size()));
    for (bool b : bundle.relevance.nodes) w.u8(b ? 1 : 0);
    w.u32(static_cast<std::uint32_t>(bundle.relevance.links.size()));
    for (const Edge& e : bundle.relevance.links) {
        w.u32(e.a);
        w.u32(e.b);
    }

    write_snapshot(w, bundle.initial);
    w.u32(static_cast<std::uint32_t>(bundle.deltas.size()));
    for (const auto& d : bundle.deltas) write_delta(w, d);

    const std::uint64_t checksum = fnv1a64(w.bytes.data(), w.bytes.size());
    w.u64(checksum);
    return std::move(w.bytes);
}

ScenarioBundle decode_bundle(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 20) throw BundleError("bundle file is truncated");
    const std::uint64_t stored =
        [&] {
            std::uint64_t v;
            std::memcpy(&v, bytes.data() + bytes.size() - 8, 8);
            return v;
        }();
    const std::uint64_t computed = fnv1a64(bytes.data(), bytes.size() - 8);
    if (stored != computed) {
        throw BundleError("bundle checksum mismatch (file is corrupt)");
    }

    Reader r(bytes.data(), bytes.size() - 8);
    if (r.u32() != kMagic) throw BundleError("not a scenario bundle file");
    const std::uint32_t version = r.u32();
    if (version != ScenarioBundle::kSchemaVersion) {
        throw BundleError("unsupported bundle schema version " + std::to_string(version) +
                          " (this build reads version " +
                          std::to_string(ScenarioBundle::kSchemaVersion) + ")");
    }

    ScenarioBundle b;
    b.config_yaml = r.str();
    b.config = parse_scenario(b.config_yaml);
    const std::uint32_t nodes = r.u32();
    b.node_index.nodes.reserve(nodes);
    for (std::uint32_t i = 0; i < nodes; ++i) {
        NodeIndex::Node n;
        n.kind = static_cast<NodeIndex::Kind>(r.u8());
        n.name = r.str();
        n.satellite_id = r.u32();
        n.ref = r.u32();
        b.node_index.nodes.push_back(std::move(n));
    }
    b.node_index.satellite_count = r.u32();
    b.start = r.i64();
    b.interval_ms = r.u32();
    b.tick_count = r.u32();
    b.total_isl_count = r.u32();

    b.relevance.enabled = r.u8() != 0;
    const std::uint32_t mask_nodes = r.u32();
    b.relevance.nodes.resize(mask_nodes);
    for (std::uint32_t i = 0; i < mask_nodes; ++i) b.relevance.nodes[i] = r.u8() != 0;
    const std::uint32_t mask_links = r.u32();
    for (std::uint32_t i = 0; i < mask_links; ++i) {
        const std::uint32_t a = r.u32();
        const std::uint32_t e = r.u32();
        b.relevance.links.insert(Edge{a, e});
    }

    b.initial = read_snapshot(r);
    const std::uint32_t deltas = r.u32();
    b.deltas.reserve(deltas);
    for (std::uint32_t i = 0; i < deltas; ++i) b.deltas.push_back(read_delta(r));

    // Structural sanity: the delta stream must advance by exactly the
    // configured interval.
    UtcMillis expected = b.start;
    if (b.initial.t != expected) throw BundleError("initial snapshot timestamp mismatch");
    for (const auto& d : b.deltas) {
        expected += b.interval_ms;
        if (d.t != expected) {
            throw BundleError("delta stream timestamps do not advance by the interval");
        }
    }
    if (b.tick_count != b.deltas.size() + 1) {
        throw BundleError("bundle tick count does not match the delta stream");
    }
    return b;
}

void save_bundle(const ScenarioBundle& bundle, const std::filesystem::path& path) {
    const auto bytes = encode_bundle(bundle);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw BundleError("cannot write bundle to '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw BundleError("short write to '" + path.string() + "'");
}

ScenarioBundle load_bundle(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BundleError("cannot open bundle '" + path.string() + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_bundle(bytes);
}

} // namespace leosim
