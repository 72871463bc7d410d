#include "dstkit/embedded_digraph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace dstkit {

// Builds graphs from already-consistent rotation data (no validation).
class GraphAssembler {
public:
    static EmbeddedDigraph assemble(std::size_t vertex_count, std::vector<EdgeRecord> edges,
                                    const std::vector<DartIndex>& flat,
                                    const std::vector<std::uint32_t>& offsets) {
        EmbeddedDigraph g;
        g.edges_ = std::move(edges);
        g.first_dart_.assign(vertex_count, kNoDart);
        g.rot_next_.assign(g.edges_.size() * 2, kNoDart);
        g.rot_prev_.assign(g.edges_.size() * 2, kNoDart);
        for (std::size_t v = 0; v < vertex_count; ++v) {
            const std::uint32_t b = offsets[v];
            const std::uint32_t e = offsets[v + 1];
            if (b == e) continue;
            g.first_dart_[v] = flat[b];
            for (std::uint32_t i = b; i < e; ++i) {
                const DartIndex cur = flat[i];
                const DartIndex nxt = flat[i + 1 < e ? i + 1 : b];
                g.rot_next_[cur] = nxt;
                g.rot_prev_[nxt] = cur;
            }
        }
        return g;
    }
};

EmbeddedDigraph::EmbeddedDigraph(std::size_t vertex_count, std::vector<EdgeRecord> edges,
                                 const std::vector<std::vector<Dart>>& rotation) {
    if (rotation.size() != vertex_count) {
        throw Error(ErrorCode::MalformedRotation,
                    "rotation lists " + std::to_string(rotation.size()) + " vertices, expected " +
                        std::to_string(vertex_count));
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const EdgeRecord& rec = edges[e];
        if (rec.tail >= vertex_count || rec.head >= vertex_count) {
            throw Error(ErrorCode::MalformedGraph,
                        "edge " + std::to_string(e) + " has an endpoint outside the vertex range");
        }
        if (rec.tail == rec.head) {
            throw Error(ErrorCode::MalformedGraph, "edge " + std::to_string(e) + " is a self-loop");
        }
        if (rec.cost < 0) {
            throw Error(ErrorCode::NegativeCost, "edge " + std::to_string(e) + " has negative cost");
        }
    }
    std::vector<std::uint8_t> seen(edges.size() * 2, 0);
    std::vector<DartIndex> flat;
    std::vector<std::uint32_t> offsets(vertex_count + 1, 0);
    flat.reserve(edges.size() * 2);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        offsets[v] = static_cast<std::uint32_t>(flat.size());
        for (const Dart& d : rotation[v]) {
            if (d.edge >= edges.size()) {
                throw Error(ErrorCode::MalformedRotation,
                            "vertex " + std::to_string(v) + " lists unknown edge " +
                                std::to_string(d.edge));
            }
            const VertexId at = d.side == Side::Tail ? edges[d.edge].tail : edges[d.edge].head;
            if (at != v) {
                throw Error(ErrorCode::MalformedRotation,
                            "dart of edge " + std::to_string(d.edge) + " listed at vertex " +
                                std::to_string(v) + " but incident to " + std::to_string(at));
            }
            if (seen[d.index()] != 0) {
                throw Error(ErrorCode::MalformedRotation,
                            "dart of edge " + std::to_string(d.edge) + " listed twice");
            }
            seen[d.index()] = 1;
            flat.push_back(d.index());
        }
    }
    offsets[vertex_count] = static_cast<std::uint32_t>(flat.size());
    if (flat.size() != edges.size() * 2) {
        const auto missing = std::find(seen.begin(), seen.end(), 0) - seen.begin();
        throw Error(ErrorCode::MalformedRotation,
                    "dart of edge " + std::to_string(missing / 2) + " missing from rotations");
    }
    *this = GraphAssembler::assemble(vertex_count, std::move(edges), flat, offsets);
}

EmbeddedDigraph EmbeddedDigraph::with_costs(std::span<const Cost> costs) const {
    if (costs.size() != edges_.size()) {
        throw Error(ErrorCode::InvalidParams, "cost list does not match the edge count");
    }
    EmbeddedDigraph out = *this;
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        if (costs[e] < 0) throw Error(ErrorCode::NegativeCost, "edge " + std::to_string(e) + " has negative cost");
        out.edges_[e].cost = costs[e];
    }
    return out;
}

std::size_t EmbeddedDigraph::degree(VertexId v) const {
    std::size_t d = 0;
    for ([[maybe_unused]] DartIndex x : darts_at(v)) ++d;
    return d;
}

std::vector<Dart> EmbeddedDigraph::rotation(VertexId v) const {
    std::vector<Dart> out;
    for (DartIndex d : darts_at(v)) out.push_back(Dart::from_index(d));
    return out;
}

EdgeId EmbeddedDigraph::insert_edge(const EdgeRecord& record, const RotationSlot& at_tail,
                                    const RotationSlot& at_head) {
    if (record.tail == record.head) {
        throw Error(ErrorCode::MalformedGraph, "cannot insert a self-loop");
    }
    if (record.tail >= vertex_count() || record.head >= vertex_count()) {
        throw Error(ErrorCode::UnknownVertex, "edge endpoint outside the vertex range");
    }
    if (at_tail.vertex != record.tail || at_head.vertex != record.head) {
        throw Error(ErrorCode::MalformedRotation, "rotation slot does not match edge endpoint");
    }
    auto check_slot = [&](const RotationSlot& slot) {
        if (slot.after) {
            if (slot.after->edge >= edge_count() || origin(*slot.after) != slot.vertex) {
                throw Error(ErrorCode::MalformedRotation,
                            "slot dart is not incident to vertex " + std::to_string(slot.vertex));
            }
        } else if (first_dart_[slot.vertex] != kNoDart) {
            throw Error(ErrorCode::MalformedRotation,
                        "vertex " + std::to_string(slot.vertex) +
                            " has darts; an insertion position is required");
        }
    };
    check_slot(at_tail);
    check_slot(at_head);

    const auto e = static_cast<EdgeId>(edges_.size());
    edges_.push_back(record);
    rot_next_.resize(edges_.size() * 2, kNoDart);
    rot_prev_.resize(edges_.size() * 2, kNoDart);

    auto splice = [&](DartIndex d, const RotationSlot& slot) {
        if (!slot.after) {
            first_dart_[slot.vertex] = d;
            rot_next_[d] = d;
            rot_prev_[d] = d;
            return;
        }
        const DartIndex a = slot.after->index();
        const DartIndex b = rot_next_[a];
        rot_next_[a] = d;
        rot_prev_[d] = a;
        rot_next_[d] = b;
        rot_prev_[b] = d;
    };
    splice(2 * e, at_tail);
    splice(2 * e + 1, at_head);
    return e;
}

FaceStructure trace_faces(const EmbeddedDigraph& g) {
    FaceStructure fs;
    const std::size_t darts = g.dart_count();
    fs.face_of_dart.assign(darts, kNoVertex);
    fs.walk.reserve(darts);
    fs.face_begin.push_back(0);
    for (DartIndex start = 0; start < darts; ++start) {
        if (fs.face_of_dart[start] != kNoVertex) continue;
        const auto id = static_cast<std::uint32_t>(fs.face_begin.size() - 1);
        DartIndex d = start;
        do {
            fs.face_of_dart[d] = id;
            fs.walk.push_back(d);
            d = g.face_successor(d);
        } while (d != start);
        fs.face_begin.push_back(static_cast<std::uint32_t>(fs.walk.size()));
    }
    return fs;
}

std::size_t validate_embedding(const EmbeddedDigraph& g) {
    const FaceStructure fs = trace_faces(g);
    const Components comps = weak_components(g);
    const std::size_t c = comps.count();
    std::vector<std::int64_t> euler(c, 0);
    for (std::size_t i = 0; i < c; ++i) euler[i] = static_cast<std::int64_t>(comps.members[i].size());
    for (EdgeId e = 0; e < g.edge_count(); ++e) --euler[comps.component_of[g.tail(e)]];
    for (std::size_t f = 0; f < fs.face_count(); ++f) {
        ++euler[comps.component_of[g.origin(fs.face(f).front())]];
    }
    std::size_t isolated = 0;
    for (std::size_t i = 0; i < c; ++i) {
        if (comps.members[i].size() == 1 && g.first_dart(comps.members[i].front()) == kNoDart) {
            ++euler[i];
            ++isolated;
        }
        if (euler[i] != 2) {
            throw Error(ErrorCode::NotPlanarEmbedding,
                        "component containing vertex " + std::to_string(comps.members[i].front()) +
                            " has Euler characteristic " + std::to_string(euler[i]) +
                            " instead of 2");
        }
    }
    // Components share one outer face in the plane.
    return fs.face_count() + isolated + 1 - c;
}

Components weak_components(const EmbeddedDigraph& g, std::span<const std::uint8_t> removed) {
    const std::size_t n = g.vertex_count();
    Components out;
    out.component_of.assign(n, kNoVertex);
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
        if (out.component_of[s] != kNoVertex || (!removed.empty() && removed[s] != 0)) continue;
        const auto id = static_cast<std::uint32_t>(out.members.size());
        std::vector<VertexId> members;
        out.component_of[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (DartIndex d : g.darts_at(v)) {
                const VertexId w = g.opposite(d);
                if (out.component_of[w] != kNoVertex || (!removed.empty() && removed[w] != 0)) continue;
                out.component_of[w] = id;
                stack.push_back(w);
            }
        }
        std::sort(members.begin(), members.end());
        out.members.push_back(std::move(members));
    }
    return out;
}

DerivedGraph restrict_graph(const EmbeddedDigraph& g, std::span<const std::uint8_t> keep_vertex,
                            std::span<const std::uint8_t> keep_edge) {
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    DerivedGraph out;
    ContractionMap& map = out.map;
    map.vertex_forward.assign(n, kNoVertex);
    map.edge_forward.assign(m, kNoEdge);
    for (VertexId v = 0; v < n; ++v) {
        if (keep_vertex[v] != 0) {
            map.vertex_forward[v] = static_cast<VertexId>(map.vertex_backward.size());
            map.vertex_backward.push_back(v);
        }
    }
    std::vector<EdgeRecord> edges;
    for (EdgeId e = 0; e < m; ++e) {
        const EdgeRecord& rec = g.edge(e);
        if ((!keep_edge.empty() && keep_edge[e] == 0) || keep_vertex[rec.tail] == 0 ||
            keep_vertex[rec.head] == 0) {
            continue;
        }
        map.edge_forward[e] = static_cast<EdgeId>(edges.size());
        map.edge_backward.push_back(e);
        EdgeRecord copy = rec;
        copy.tail = map.vertex_forward[rec.tail];
        copy.head = map.vertex_forward[rec.head];
        edges.push_back(copy);
    }
    std::vector<DartIndex> flat;
    std::vector<std::uint32_t> offsets;
    flat.reserve(edges.size() * 2);
    offsets.reserve(map.vertex_backward.size() + 1);
    for (VertexId v : map.vertex_backward) {
        offsets.push_back(static_cast<std::uint32_t>(flat.size()));
        for (DartIndex d : g.darts_at(v)) {
            const EdgeId ne = map.edge_forward[d / 2];
            if (ne != kNoEdge) flat.push_back(2 * ne + (d & 1U));
        }
    }
    offsets.push_back(static_cast<std::uint32_t>(flat.size()));
    out.graph = GraphAssembler::assemble(map.vertex_backward.size(), std::move(edges), flat, offsets);
    return out;
}

DerivedGraph delete_vertices(const EmbeddedDigraph& g, std::span<const VertexId> vertices) {
    std::vector<std::uint8_t> keep(g.vertex_count(), 1);
    for (VertexId v : vertices) {
        if (v >= g.vertex_count()) {
            throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v) + " does not exist");
        }
        keep[v] = 0;
    }
    return restrict_graph(g, keep, {});
}

DerivedGraph delete_edges(const EmbeddedDigraph& g, std::span<const EdgeId> edges) {
    std::vector<std::uint8_t> keep_edge(g.edge_count(), 1);
    for (EdgeId e : edges) {
        if (e >= g.edge_count()) {
            throw Error(ErrorCode::MalformedGraph, "edge " + std::to_string(e) + " does not exist");
        }
        keep_edge[e] = 0;
    }
    const std::vector<std::uint8_t> keep_vertex(g.vertex_count(), 1);
    return restrict_graph(g, keep_vertex, keep_edge);
}

DerivedGraph contract_connected(const EmbeddedDigraph& g, std::span<const VertexId> t,
                                VertexId label) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint8_t> in_t(n, 0);
    for (VertexId v : t) {
        if (v >= n) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v) + " does not exist");
        in_t[v] = 1;
    }
    if (label >= n || in_t[label] == 0) {
        throw Error(ErrorCode::LabelCollision,
                    "label " + std::to_string(label) + " is not a member of the contracted set");
    }

    // Spanning tree of g[t] by BFS; parent_dart[v] is the dart at v of its tree edge.
    std::vector<DartIndex> parent_dart(n, kNoDart);
    std::vector<std::uint8_t> reached(n, 0);
    std::vector<VertexId> queue{label};
    reached[label] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const VertexId v = queue[qi];
        for (DartIndex d : g.darts_at(v)) {
            const VertexId w = g.opposite(d);
            if (in_t[w] == 0 || reached[w] != 0) continue;
            reached[w] = 1;
            parent_dart[w] = reverse_dart(d);
            queue.push_back(w);
        }
    }
    std::size_t t_size = 0;
    for (VertexId v = 0; v < n; ++v) t_size += in_t[v];
    if (queue.size() != t_size) {
        throw Error(ErrorCode::NotConnectedSubset, "contracted vertex set is not weakly connected");
    }

    DerivedGraph out;
    ContractionMap& map = out.map;
    map.vertex_forward.assign(n, kNoVertex);
    map.edge_forward.assign(g.edge_count(), kNoEdge);
    VertexId label_child = kNoVertex;
    for (VertexId v = 0; v < n; ++v) {
        if (in_t[v] != 0 && v != label) continue;
        map.vertex_forward[v] = static_cast<VertexId>(map.vertex_backward.size());
        map.vertex_backward.push_back(v);
    }
    label_child = map.vertex_forward[label];
    for (VertexId v = 0; v < n; ++v) {
        if (in_t[v] != 0) map.vertex_forward[v] = label_child;
    }
    std::vector<EdgeRecord> edges;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const EdgeRecord& rec = g.edge(e);
        if (in_t[rec.tail] != 0 && in_t[rec.head] != 0) continue;
        map.edge_forward[e] = static_cast<EdgeId>(edges.size());
        map.edge_backward.push_back(e);
        EdgeRecord copy = rec;
        copy.tail = map.vertex_forward[rec.tail];
        copy.head = map.vertex_forward[rec.head];
        edges.push_back(copy);
    }

    // Merged rotation: Euler tour over the spanning tree. Descending into a
    // child at its tree dart and resuming after it is exactly the splice of
    // the two rotations at a contracted edge.
    std::vector<DartIndex> merged;
    struct Frame {
        DartIndex stop;
        DartIndex cur;
    };
    std::vector<Frame> stack;
    if (g.first_dart(label) != kNoDart) stack.push_back({g.first_dart(label), g.first_dart(label)});
    bool at_root_start = true;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (!at_root_start && f.cur == f.stop) {
            stack.pop_back();
            if (!stack.empty()) stack.back().cur = g.next_in_rotation(stack.back().cur);
            continue;
        }
        at_root_start = false;
        const DartIndex d = f.cur;
        const VertexId w = g.opposite(d);
        if (in_t[w] != 0) {
            if (parent_dart[w] == reverse_dart(d)) {
                // Tree edge to a child: walk the child's rotation starting after it.
                const DartIndex entry = reverse_dart(d);
                const DartIndex first = g.next_in_rotation(entry);
                if (first == entry) {
                    f.cur = g.next_in_rotation(f.cur);
                } else {
                    stack.push_back({entry, first});
                }
                continue;
            }
            f.cur = g.next_in_rotation(f.cur);
            continue;
        }
        merged.push_back(2 * map.edge_forward[d / 2] + (d & 1U));
        f.cur = g.next_in_rotation(f.cur);
    }

    std::vector<DartIndex> flat;
    std::vector<std::uint32_t> offsets;
    flat.reserve(edges.size() * 2);
    for (VertexId child = 0; child < map.vertex_backward.size(); ++child) {
        offsets.push_back(static_cast<std::uint32_t>(flat.size()));
        if (child == label_child) {
            flat.insert(flat.end(), merged.begin(), merged.end());
            continue;
        }
        for (DartIndex d : g.darts_at(map.vertex_backward[child])) {
            flat.push_back(2 * map.edge_forward[d / 2] + (d & 1U));
        }
    }
    offsets.push_back(static_cast<std::uint32_t>(flat.size()));
    out.graph = GraphAssembler::assemble(map.vertex_backward.size(), std::move(edges), flat, offsets);
    return out;
}

std::vector<DerivedGraph> split_with_hub(const EmbeddedDigraph& g,
                                         std::span<const std::uint32_t> group,
                                         std::size_t piece_count, VertexId hub,
                                         std::span<const std::uint8_t> keep_edge) {
    const std::size_t n = g.vertex_count();
    auto piece_of = [&](VertexId v) -> std::uint32_t {
        if (v == hub) return kNoVertex;
        return group[v] < piece_count ? group[v] : kNoVertex - 1;
    };
    std::vector<DerivedGraph> pieces(piece_count);
    std::vector<VertexId> local(n, kNoVertex);
    std::vector<VertexId> hub_local(piece_count, kNoVertex);
    for (VertexId v = 0; v < n; ++v) {
        if (v == hub) {
            for (std::size_t p = 0; p < piece_count; ++p) {
                hub_local[p] = static_cast<VertexId>(pieces[p].map.vertex_backward.size());
                pieces[p].map.vertex_backward.push_back(v);
            }
            continue;
        }
        const std::uint32_t p = piece_of(v);
        if (p >= piece_count) continue;
        local[v] = static_cast<VertexId>(pieces[p].map.vertex_backward.size());
        pieces[p].map.vertex_backward.push_back(v);
    }

    std::vector<std::vector<EdgeRecord>> edges(piece_count);
    std::vector<EdgeId> local_edge(g.edge_count(), kNoEdge);
    std::vector<std::uint32_t> edge_piece(g.edge_count(), kNoVertex);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!keep_edge.empty() && keep_edge[e] == 0) continue;
        const EdgeRecord& rec = g.edge(e);
        const std::uint32_t pt = piece_of(rec.tail);
        const std::uint32_t ph = piece_of(rec.head);
        std::uint32_t p = kNoVertex;
        if (rec.tail == hub && ph < piece_count) {
            p = ph;
        } else if (rec.head == hub && pt < piece_count) {
            p = pt;
        } else if (pt < piece_count && pt == ph) {
            p = pt;
        }
        if (p == kNoVertex) continue;
        edge_piece[e] = p;
        local_edge[e] = static_cast<EdgeId>(edges[p].size());
        pieces[p].map.edge_backward.push_back(e);
        EdgeRecord copy = rec;
        copy.tail = rec.tail == hub ? hub_local[p] : local[rec.tail];
        copy.head = rec.head == hub ? hub_local[p] : local[rec.head];
        edges[p].push_back(copy);
    }

    std::vector<std::vector<DartIndex>> hub_darts(piece_count);
    if (hub < n) {
        for (DartIndex d : g.darts_at(hub)) {
            const std::uint32_t p = edge_piece[d / 2];
            if (p < piece_count) hub_darts[p].push_back(2 * local_edge[d / 2] + (d & 1U));
        }
    }
    std::vector<std::vector<DartIndex>> flat(piece_count);
    std::vector<std::vector<std::uint32_t>> offsets(piece_count);
    for (VertexId v = 0; v < n; ++v) {
        if (v == hub) {
            for (std::size_t p = 0; p < piece_count; ++p) {
                offsets[p].push_back(static_cast<std::uint32_t>(flat[p].size()));
                flat[p].insert(flat[p].end(), hub_darts[p].begin(), hub_darts[p].end());
            }
            continue;
        }
        const std::uint32_t p = piece_of(v);
        if (p >= piece_count) continue;
        offsets[p].push_back(static_cast<std::uint32_t>(flat[p].size()));
        for (DartIndex d : g.darts_at(v)) {
            if (edge_piece[d / 2] == p) flat[p].push_back(2 * local_edge[d / 2] + (d & 1U));
        }
    }
    for (std::size_t p = 0; p < piece_count; ++p) {
        offsets[p].push_back(static_cast<std::uint32_t>(flat[p].size()));
        pieces[p].graph = GraphAssembler::assemble(pieces[p].map.vertex_backward.size(),
                                                   std::move(edges[p]), flat[p], offsets[p]);
    }
    return pieces;
}

AuxiliaryInsertion add_auxiliary_edge(const EmbeddedDigraph& g, const RotationSlot& at_u,
                                      const RotationSlot& at_v) {
    AuxiliaryInsertion out{g, kNoEdge};
    out.edge = out.graph.insert_edge(EdgeRecord{at_u.vertex, at_v.vertex, 0, true}, at_u, at_v);
    validate_embedding(out.graph);
    return out;
}

std::size_t triangulate_faces(EmbeddedDigraph& g) {
    const FaceStructure fs = trace_faces(g);
    std::size_t chords = 0;
    std::vector<DartIndex> w;
    std::vector<std::uint32_t> nxt;
    std::vector<std::uint32_t> prv;
    for (std::size_t f = 0; f < fs.face_count(); ++f) {
        const auto walk = fs.face(f);
        if (walk.size() <= 3) continue;
        const auto m = static_cast<std::uint32_t>(walk.size());
        w.assign(walk.begin(), walk.end());
        nxt.resize(m);
        prv.resize(m);
        for (std::uint32_t i = 0; i < m; ++i) {
            nxt[i] = (i + 1) % m;
            prv[i] = (i + m - 1) % m;
        }
        std::uint32_t size = m;
        std::uint32_t i = 0;
        std::uint32_t fails = 0;
        while (size > 3 && fails < size) {
            const std::uint32_t j = nxt[i];
            const std::uint32_t l = nxt[j];
            const std::uint32_t p = prv[i];
            const VertexId a = g.origin(w[i]);
            const VertexId c = g.origin(w[l]);
            if (a == c) {
                i = j;
                ++fails;
                continue;
            }
            const RotationSlot at_a{a, Dart::from_index(reverse_dart(w[p]))};
            const RotationSlot at_c{c, Dart::from_index(reverse_dart(w[j]))};
            const EdgeId e = g.insert_edge(EdgeRecord{a, c, 0, true}, at_a, at_c);
            ++chords;
            w[i] = 2 * e;
            nxt[i] = l;
            prv[l] = i;
            --size;
            fails = 0;
            i = p;
        }
    }
    return chords;
}

} // namespace dstkit
