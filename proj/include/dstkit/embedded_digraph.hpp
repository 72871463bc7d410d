#pragma once

// Embedded planar directed multigraph.
//
// Every edge has two darts: index 2e is the tail end, 2e+1 the head end. Each
// vertex owns a cyclic rotation of the darts incident to it. Faces are the
// orbits of face_successor(d) = next_in_rotation(reverse(d)).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dstkit/types.hpp"

namespace dstkit {

using DartIndex = std::uint32_t;
inline constexpr DartIndex kNoDart = std::numeric_limits<DartIndex>::max();

enum class Side : std::uint8_t { Tail = 0, Head = 1 };

struct Dart {
    EdgeId edge = kNoEdge;
    Side side = Side::Tail;

    constexpr DartIndex index() const { return 2 * edge + static_cast<DartIndex>(side); }
    static constexpr Dart from_index(DartIndex d) {
        return Dart{d / 2, (d & 1U) != 0 ? Side::Head : Side::Tail};
    }
    constexpr Dart reverse() const {
        return Dart{edge, side == Side::Tail ? Side::Head : Side::Tail};
    }
    friend constexpr auto operator<=>(const Dart&, const Dart&) = default;
};

constexpr DartIndex reverse_dart(DartIndex d) { return d ^ 1U; }

struct EdgeRecord {
    VertexId tail = kNoVertex;
    VertexId head = kNoVertex;
    Cost cost = 0;
    bool auxiliary = false;
};

/// Where a new dart is spliced into a rotation: directly after `after` at
/// `vertex`, or as the only dart when the vertex has none.
struct RotationSlot {
    VertexId vertex = kNoVertex;
    std::optional<Dart> after;
};

/// Edge and vertex lineage between a parent graph and a derived child graph.
struct ContractionMap {
    std::vector<EdgeId> edge_forward;      // parent edge -> child edge, kNoEdge if absorbed
    std::vector<EdgeId> edge_backward;     // child edge -> parent edge
    std::vector<VertexId> vertex_forward;  // parent vertex -> child vertex, kNoVertex if gone
    std::vector<VertexId> vertex_backward; // child vertex -> representative parent vertex
};

class EmbeddedDigraph {
public:
    class RotationRange;

    EmbeddedDigraph() = default;

    /// Builds a graph from explicit rotations. `rotation[v]` lists the darts at v
    /// in cyclic order. Throws MalformedRotation if a dart is missing, duplicated
    /// or listed at the wrong vertex; MalformedGraph for self-loops or bad
    /// endpoints; NegativeCost for negative costs.
    EmbeddedDigraph(std::size_t vertex_count, std::vector<EdgeRecord> edges,
                    const std::vector<std::vector<Dart>>& rotation);

    std::size_t vertex_count() const { return first_dart_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t dart_count() const { return 2 * edges_.size(); }

    const EdgeRecord& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<EdgeRecord>& edges() const { return edges_; }
    VertexId tail(EdgeId e) const { return edges_[e].tail; }
    VertexId head(EdgeId e) const { return edges_[e].head; }
    Cost cost(EdgeId e) const { return edges_[e].cost; }
    bool is_auxiliary(EdgeId e) const { return edges_[e].auxiliary; }

    VertexId origin(DartIndex d) const {
        const EdgeRecord& rec = edges_[d / 2];
        return (d & 1U) != 0 ? rec.head : rec.tail;
    }
    VertexId origin(Dart d) const { return origin(d.index()); }
    VertexId opposite(DartIndex d) const { return origin(reverse_dart(d)); }

    DartIndex first_dart(VertexId v) const { return first_dart_[v]; }
    DartIndex next_in_rotation(DartIndex d) const { return rot_next_[d]; }
    DartIndex prev_in_rotation(DartIndex d) const { return rot_prev_[d]; }
    DartIndex face_successor(DartIndex d) const { return rot_next_[reverse_dart(d)]; }

    std::size_t degree(VertexId v) const;

    /// Same embedding with new edge costs. Throws NegativeCost.
    EmbeddedDigraph with_costs(std::span<const Cost> costs) const;
    RotationRange darts_at(VertexId v) const;
    std::vector<Dart> rotation(VertexId v) const;

    /// Splices a new edge into the rotation system without any planarity check.
    /// Callers that need the check use add_auxiliary_edge().
    EdgeId insert_edge(const EdgeRecord& record, const RotationSlot& at_tail,
                       const RotationSlot& at_head);

    class RotationRange {
    public:
        class iterator {
        public:
            using value_type = DartIndex;
            using difference_type = std::ptrdiff_t;

            iterator() = default;
            iterator(const EmbeddedDigraph* g, DartIndex start, DartIndex cur)
                : g_(g), start_(start), cur_(cur) {}
            DartIndex operator*() const { return cur_; }
            iterator& operator++() {
                cur_ = g_->rot_next_[cur_];
                if (cur_ == start_) cur_ = kNoDart;
                return *this;
            }
            iterator operator++(int) {
                iterator tmp = *this;
                ++*this;
                return tmp;
            }
            bool operator==(const iterator& o) const { return cur_ == o.cur_; }

        private:
            const EmbeddedDigraph* g_ = nullptr;
            DartIndex start_ = kNoDart;
            DartIndex cur_ = kNoDart;
        };

        RotationRange(const EmbeddedDigraph* g, DartIndex start) : g_(g), start_(start) {}
        iterator begin() const { return iterator(g_, start_, start_); }
        iterator end() const { return iterator(g_, start_, kNoDart); }

    private:
        const EmbeddedDigraph* g_;
        DartIndex start_;
    };

private:
    friend class GraphAssembler;

    std::vector<EdgeRecord> edges_;
    std::vector<DartIndex> first_dart_;
    std::vector<DartIndex> rot_next_;
    std::vector<DartIndex> rot_prev_;
};

inline EmbeddedDigraph::RotationRange EmbeddedDigraph::darts_at(VertexId v) const {
    return RotationRange(this, first_dart_[v]);
}

/// Face orbits in discovery order (scanning darts by ascending index).
struct FaceStructure {
    std::vector<std::uint32_t> face_of_dart;
    std::vector<std::uint32_t> face_begin; // CSR offsets into walk, size faces+1
    std::vector<DartIndex> walk;

    std::size_t face_count() const { return face_begin.empty() ? 0 : face_begin.size() - 1; }
    std::span<const DartIndex> face(std::size_t f) const {
        return {walk.data() + face_begin[f], walk.data() + face_begin[f + 1]};
    }
};

FaceStructure trace_faces(const EmbeddedDigraph& g);

/// Checks the rotation system against Euler's formula, component by component.
/// Returns the number of faces of the embedding (V - E + F = 1 + C).
/// Throws NotPlanarEmbedding when some component has positive genus.
std::size_t validate_embedding(const EmbeddedDigraph& g);

struct Components {
    std::vector<std::uint32_t> component_of; // per vertex
    std::vector<std::vector<VertexId>> members; // ascending ids; ordered by smallest member

    std::size_t count() const { return members.size(); }
};

/// Weak components, ignoring orientation. Vertices flagged in `removed` (if
/// non-empty) are skipped and get component kNoVertex.
Components weak_components(const EmbeddedDigraph& g, std::span<const std::uint8_t> removed = {});

struct DerivedGraph {
    EmbeddedDigraph graph;
    ContractionMap map;
};

/// Removes the given vertices and their incident edges. Survivors keep their
/// relative order and their rotations with removed darts spliced out.
DerivedGraph delete_vertices(const EmbeddedDigraph& g, std::span<const VertexId> vertices);

/// Removes the given edges; all vertices survive.
DerivedGraph delete_edges(const EmbeddedDigraph& g, std::span<const EdgeId> edges);

/// General restriction: keeps vertices with keep_vertex[v] and edges with
/// keep_edge[e] (all edges when empty) whose endpoints both survive.
DerivedGraph restrict_graph(const EmbeddedDigraph& g, std::span<const std::uint8_t> keep_vertex,
                            std::span<const std::uint8_t> keep_edge);

/// Contracts the weakly connected vertex set `t` into the single vertex
/// `label`, which must be a member of `t`. Rotations are merged by edge
/// contraction splices along a spanning tree of g[t]; edges inside t vanish.
/// Throws UnknownVertex, NotConnectedSubset or LabelCollision.
DerivedGraph contract_connected(const EmbeddedDigraph& g, std::span<const VertexId> t,
                                VertexId label);

/// Splits a graph into pieces. Every vertex with group[v] = i < piece_count
/// goes to piece i; the `hub` vertex (group ignored) is copied into every
/// piece. An edge is kept in piece i when both ends lie in piece i, it is not
/// a hub-hub edge and keep_edge (if non-empty) allows it. Rotations at the hub
/// keep their cyclic order restricted to each piece.
std::vector<DerivedGraph> split_with_hub(const EmbeddedDigraph& g,
                                         std::span<const std::uint32_t> group,
                                         std::size_t piece_count, VertexId hub,
                                         std::span<const std::uint8_t> keep_edge = {});

struct AuxiliaryInsertion {
    EmbeddedDigraph graph;
    EdgeId edge = kNoEdge;
};

/// Adds an undirected helper edge of cost 0 flagged auxiliary, inserted at the
/// given rotation slots. Throws NotPlanarEmbedding if the result violates
/// Euler's formula.
AuxiliaryInsertion add_auxiliary_edge(const EmbeddedDigraph& g, const RotationSlot& at_u,
                                      const RotationSlot& at_v);

/// Adds auxiliary chords (in place) until every face walk has at most three
/// distinct vertices. Chords join walk positions with distinct vertices, so
/// no loops are created; parallel chords are allowed. Returns chord count.
std::size_t triangulate_faces(EmbeddedDigraph& g);

} // namespace dstkit
