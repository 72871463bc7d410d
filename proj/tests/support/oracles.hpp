#pragma once
// Reference implementations used to check the library. None of them call
// into the code under test beyond reading graph data.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dstkit/embedded_digraph.hpp"

namespace oracle {

using dstkit::Cost;
using dstkit::EdgeId;
using dstkit::VertexId;

inline constexpr Cost kInf = INT64_MAX;

struct Arc {
    VertexId tail;
    VertexId head;
    Cost cost;
    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Real (non-auxiliary) arcs of g in id order.
std::vector<Arc> arcs_of(const dstkit::EmbeddedDigraph& g);

/// Multi-source distances by repeated relaxation; kInf when unreachable.
std::vector<Cost> bellman_ford(std::size_t n, std::span<const Arc> arcs, std::span<const VertexId> sources);
std::vector<Cost> bellman_ford(const dstkit::EmbeddedDigraph& g, std::span<const VertexId> sources);

/// Canonical component labels: each vertex gets the smallest vertex id of its
/// undirected component. Vertices with skip[v] get UINT32_MAX.
std::vector<std::uint32_t> union_find_labels(std::size_t n, std::span<const Arc> arcs,
                                             std::span<const std::uint8_t> skip = {});

/// Same partition by depth-first flood fill on an adjacency matrix.
std::vector<std::uint32_t> flood_fill_labels(std::size_t n, std::span<const Arc> arcs,
                                             std::span<const std::uint8_t> skip = {});

/// Converts any per-vertex component id into canonical labels as above.
std::vector<std::uint32_t> canonical_labels(std::span<const std::uint32_t> ids);

/// Face count from the rotation lists, walking next(reverse(d)) directly.
/// Components share the outer face, so V - E + F = 1 + C.
std::size_t face_count(const dstkit::EmbeddedDigraph& g);
/// Face sizes (dart count per orbit), sorted.
std::vector<std::size_t> face_sizes(const dstkit::EmbeddedDigraph& g);
/// Euler per component: V - E + (face orbits) = 2C.
bool euler_holds(const dstkit::EmbeddedDigraph& g);

/// Multiset of arcs (tail, head, cost) after relabelling through `label` and
/// dropping loops, sorted.
std::vector<Arc> quotient_arcs(std::span<const Arc> arcs, std::span<const VertexId> label);

/// Vertices reachable from the sources along the given arcs.
std::vector<std::uint8_t> reachable(std::size_t n, std::span<const Arc> arcs, std::span<const VertexId> sources);

/// Largest total weight of an undirected component after removing `removed`.
std::uint64_t max_component_weight(std::size_t n, std::span<const Arc> arcs,
                                   std::span<const std::uint8_t> removed,
                                   std::span<const std::uint64_t> weight);

/// Exhaustive search over vertex sets {a, b, c} (with repetition) of the
/// separator formed by the undirected tree paths from the root to a, b, c.
/// Returns the smallest achievable maximum component weight.
std::uint64_t best_triple_separator(std::size_t n, std::span<const Arc> arcs,
                                    std::span<const Arc> tree, VertexId root,
                                    std::span<const std::uint64_t> weight);

} // namespace oracle
