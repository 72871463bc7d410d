#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dstkit/instance.hpp"
#include "dstkit/separator.hpp"
#include "dstkit/shortest_paths.hpp"

namespace dstkit {

/// Non-negative dyadic rational num / 2^shift. Estimates start integral and
/// are only ever halved.
struct Dyadic {
    Cost num = 0;
    unsigned shift = 0;

    Cost floor() const { return shift >= 63 ? 0 : num >> shift; }
    Dyadic half() const { return {num, shift + 1}; }
    bool below_one() const { return floor() < 1; }
    std::string str() const;
};

/// Smallest l >= 0 with x <= 2^l (x >= 1); 0 for x <= 1.
unsigned ceil_log2(std::uint64_t x);

struct ScalingInfo {
    Rational epsilon;
    std::size_t n = 0;         // vertex count of the unscaled instance
    Cost delta = 0;            // max root-set-to-terminal distance, original costs
    Cost scaled_delta = 0;     // same, scaled costs
    Cost max_scaled_distance = 0; // max root-set distance over surviving vertices
    std::size_t removed_edges = 0;
    std::size_t removed_vertices = 0;

    /// Right-hand side n*k/eps + n, rounded down (distances are integers).
    Cost distance_bound(std::size_t k) const;
};

struct ScaledInstance {
    Subinstance scaled;             // lineage into the unscaled instance
    ScalingInfo info;
    std::optional<Solution> immediate; // set when delta = 0
};

/// Deletes far edges and vertices and rescales costs to positive integers,
/// c' = max(1, ceil(c * n / (eps * delta))). Throws Infeasible, InvalidEpsilon.
ScaledInstance scale_costs(const Instance& inst, Rational epsilon);

/// Keeps the vertices within `bound` of the root set. Roots always survive.
Subinstance preprocess_far(const Instance& inst, Cost bound);
Subinstance preprocess_far(const Instance& inst, const DistanceTable& table, Cost bound);

/// One subinstance per separator component that holds a terminal. V(T) is
/// contracted into the first root it contains, which becomes the first root
/// of every subinstance; edges from a component into V(T) are dropped.
std::vector<Subinstance> build_subinstances(const Instance& inst, const SeparatorResult& sep);

struct MergeResult {
    std::vector<EdgeId> edges; // ascending, in inst's graph
    Cost separator_cost = 0;   // cost(T \ F)
    Cost subinstance_cost = 0; // sum of subsolution costs
    Cost merged_cost = 0;      // cost of the merged edge set

    bool identity_holds() const { return merged_cost == separator_cost + subinstance_cost; }
};

MergeResult merge_solutions(const Instance& inst, const SeparatorResult& sep,
                            std::span<const Subinstance> parts,
                            std::span<const Solution> subsolutions);

/// Counters filled when auditing is on.
struct SolverTrace {
    std::uint64_t separator_calls = 0;
    std::uint64_t balance_violations = 0;
    std::uint64_t path_checks = 0;
    std::uint64_t path_violations = 0;
    std::uint64_t mark_violations = 0;
    std::uint64_t max_marks = 0;
    std::uint64_t structure_violations = 0;
    std::uint64_t halving_violations = 0;
    std::uint64_t merge_checks = 0;
    std::uint64_t merge_violations = 0;
    std::uint64_t embedding_checks = 0;
    std::uint64_t embedding_violations = 0;

    void absorb(const SolverTrace& other);
    std::uint64_t violations() const;
};

struct RecursionBudget {
    Dyadic opt_estimate;
    std::uint64_t calls = 0; // logical calls of the recursion, saturating
    unsigned ell = 0;
    unsigned o = 0;

    /// k * 2^(2l + o), saturating at the largest uint64.
    static std::uint64_t call_bound(std::size_t k, unsigned ell, unsigned o);
};

struct RecurseOptions {
    bool audit = false;
    bool check_embeddings = false;
};

/// The estimate-halving recursion on an instance with positive integer costs.
/// Returns nullopt for an infeasible outcome. Edge ids refer to inst's graph.
std::optional<Solution> dst_recurse(const Instance& inst, RecursionBudget& budget,
                                    const RecurseOptions& options = {},
                                    SolverTrace* trace = nullptr);

struct SolveOptions {
    Rational epsilon;
    bool prune = false;
    bool audit = false;
    bool check_embeddings = false;
};

struct SolveReport {
    Solution solution;          // in the caller's graph and cost units
    std::uint64_t recursion_calls = 0;
    unsigned ell = 0;
    unsigned o = 0;
    ScalingInfo scaling;
    Dyadic opt_estimate;
    Cost scaled_cost = 0;       // cost of the recursion output under scaled costs
    SolverTrace trace;
};

/// Full pipeline: scaling, recursion, lineage mapping, optional pruning.
/// Throws Infeasible when some terminal is unreachable from every root.
SolveReport solve(const Instance& inst, const SolveOptions& options = {});

/// Removes edges whose removal keeps the solution feasible, in decreasing
/// cost then id order. The result is minimal.
Solution prune(const Instance& inst, const Solution& solution);

/// Node-weighted to edge-weighted reduction. Every edge entering a Steiner
/// vertex v with c_v > 0 is subdivided; the new half next to v carries c_v.
struct NodeWeightedReduction {
    Instance instance;
    std::vector<EdgeId> edge_origin; // reduced edge -> original edge
    std::size_t original_vertex_count = 0;
};

/// Throws NegativeCost for a negative node cost and InvalidInstance for a
/// positive cost on a root or terminal.
NodeWeightedReduction node_weighted_reduction(const Instance& inst,
                                              std::span<const Cost> node_costs);

/// Original edges used by a reduced solution, ascending.
std::vector<EdgeId> lift_node_weighted(const NodeWeightedReduction& red,
                                       std::span<const EdgeId> reduced_edges);

/// Edge cost plus the cost of every Steiner vertex some edge enters.
Cost node_weighted_cost(const Instance& inst, std::span<const Cost> node_costs,
                        std::span<const EdgeId> edges);

} // namespace dstkit
