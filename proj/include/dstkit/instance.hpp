#pragma once

#include <span>
#include <string>
#include <vector>

#include "dstkit/embedded_digraph.hpp"

namespace dstkit {

/// A Directed Steiner Tree instance on an embedded digraph.
struct Instance {
    EmbeddedDigraph graph;
    std::vector<VertexId> roots;     // ordered, distinct
    std::vector<VertexId> terminals; // ascending, disjoint from roots

    std::size_t k() const { return terminals.size(); }
    std::size_t root_count() const { return roots.size(); }
};

/// Validates roles and builds an instance. Terminals are sorted.
/// Throws UnknownVertex, RoleConflict or InvalidInstance.
Instance make_instance(EmbeddedDigraph graph, std::vector<VertexId> roots,
                       std::vector<VertexId> terminals);

/// Instance derived from a parent by deletion, contraction or reweighting,
/// together with the edge lineage back to the parent.
struct Subinstance {
    Instance instance;
    std::vector<EdgeId> edge_origin;   // child edge -> parent edge
    std::vector<VertexId> vertex_origin; // child vertex -> parent vertex (kNoVertex for new)
};

/// Edge subset with its total cost. Edge ids refer to the graph the solution
/// was produced for.
struct Solution {
    std::vector<EdgeId> edges; // ascending
    Cost cost = 0;
    bool feasible = false;
};

Cost edge_set_cost(const EmbeddedDigraph& g, std::span<const EdgeId> edges);

/// True when every terminal is reachable from some root using only `edges`.
bool reaches_all_terminals(const Instance& inst, std::span<const EdgeId> edges);

/// Builds a Solution for `edges` (sorted, deduplicated) with cost and
/// feasibility filled in.
Solution make_solution(const Instance& inst, std::vector<EdgeId> edges);

} // namespace dstkit
