#include "dstkit/dst_solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dstkit {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t add_saturating(std::uint64_t a, std::uint64_t b) {
    return a > kSaturated - b ? kSaturated : a + b;
}

std::vector<std::uint8_t> vertex_mask(std::size_t n, std::span<const VertexId> vertices) {
    std::vector<std::uint8_t> mask(n, 0);
    for (VertexId v : vertices) mask[v] = 1;
    return mask;
}

// Components of g minus `removed` with their weights, ordered by smallest member.
void attach_components(const EmbeddedDigraph& g, const WeightAssignment& w, SeparatorResult& r) {
    const std::vector<std::uint8_t> removed = vertex_mask(g.vertex_count(), r.separator_vertices);
    Components comps = weak_components(g, removed);
    r.components = std::move(comps.members);
    r.component_weights.assign(r.components.size(), 0);
    for (std::size_t i = 0; i < r.components.size(); ++i) {
        for (VertexId v : r.components[i]) r.component_weights[i] += w.weight[v];
    }
    r.total_weight = w.total();
}

// Separator for the preprocessed graph. With several roots and a disconnected
// graph only the component carrying more than half the weight is separated.
SeparatorResult separate(const Instance& inst, const DistanceTable& table,
                         const WeightAssignment& w) {
    const EmbeddedDigraph& g = inst.graph;
    if (inst.roots.size() == 1) return directed_separator(g, table, w);
    const Components comps = weak_components(g);
    if (comps.count() == 1) return multirooted_separator(g, table, w);

    const std::uint64_t total = w.total();
    std::size_t heavy = comps.count();
    for (std::size_t i = 0; i < comps.count(); ++i) {
        std::uint64_t cw = 0;
        for (VertexId v : comps.members[i]) cw += w.weight[v];
        if (2 * cw > total) heavy = i;
    }
    SeparatorResult out;
    if (heavy == comps.count()) {
        attach_components(g, w, out);
        return out;
    }

    std::vector<std::uint8_t> keep(g.vertex_count(), 0);
    for (VertexId v : comps.members[heavy]) keep[v] = 1;
    const DerivedGraph sub = restrict_graph(g, keep, {});
    std::vector<VertexId> sub_roots;
    std::vector<std::uint32_t> root_index;
    for (std::uint32_t i = 0; i < inst.roots.size(); ++i) {
        if (keep[inst.roots[i]] != 0) {
            sub_roots.push_back(sub.map.vertex_forward[inst.roots[i]]);
            root_index.push_back(i);
        }
    }
    WeightAssignment sub_w;
    sub_w.weight.resize(sub.graph.vertex_count());
    for (VertexId v = 0; v < sub.graph.vertex_count(); ++v) {
        sub_w.weight[v] = w.weight[sub.map.vertex_backward[v]];
    }
    const DistanceTable sub_table = dijkstra(sub.graph, sub_roots);
    const SeparatorResult s = sub_roots.size() == 1 ? directed_separator(sub.graph, sub_table, sub_w)
                                                    : multirooted_separator(sub.graph, sub_table, sub_w);

    auto up_v = [&](VertexId v) { return sub.map.vertex_backward[v]; };
    auto up_e = [&](EdgeId e) { return sub.map.edge_backward[e]; };
    for (VertexId v : s.targets) out.targets.push_back(up_v(v));
    for (VertexId v : s.separator_vertices) out.separator_vertices.push_back(up_v(v));
    for (EdgeId e : s.tree_edges) out.tree_edges.push_back(up_e(e));
    for (EdgeId e : s.connector_edges) out.connector_edges.push_back(up_e(e));
    for (const RootSubtree& st : s.subtrees) {
        RootSubtree mapped{root_index[st.root_index], up_v(st.root), {}, {}};
        for (VertexId v : st.marked) mapped.marked.push_back(up_v(v));
        for (EdgeId e : st.edges) mapped.edges.push_back(up_e(e));
        out.subtrees.push_back(std::move(mapped));
    }
    // Restriction keeps relative order, so the mapped lists stay ascending.
    attach_components(g, w, out);
    return out;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0U); }
    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<std::uint32_t> parent_;
};

// Checks a separator against its contract without reusing its own bookkeeping.
void audit_separator(const Instance& inst, const DistanceTable& table, const WeightAssignment& w,
                     const SeparatorResult& sep, SolverTrace& trace) {
    const EmbeddedDigraph& g = inst.graph;
    const std::size_t n = g.vertex_count();
    ++trace.separator_calls;

    // Balance: union-find over edges avoiding V(T).
    const std::vector<std::uint8_t> in_t = vertex_mask(n, sep.separator_vertices);
    UnionFind uf(n);
    for (const EdgeRecord& rec : g.edges()) {
        if (in_t[rec.tail] == 0 && in_t[rec.head] == 0) uf.unite(rec.tail, rec.head);
    }
    std::vector<std::uint64_t> weight(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        if (in_t[v] == 0) weight[uf.find(v)] += w.weight[v];
    }
    const std::uint64_t total = w.total();
    for (VertexId v = 0; v < n; ++v) {
        if (2 * weight[v] > total) {
            ++trace.balance_violations;
            break;
        }
    }

    // Shortest-path property and mark bound, per subtree.
    std::vector<EdgeId> in_edge(n, kNoEdge);
    for (const RootSubtree& st : sep.subtrees) {
        const std::size_t limit = inst.roots.size() == 1 ? 3 : 4;
        trace.max_marks = std::max<std::uint64_t>(trace.max_marks, st.marked.size());
        if (st.marked.size() > limit) ++trace.mark_violations;
        for (EdgeId e : st.edges) {
            if (in_edge[g.head(e)] != kNoEdge) ++trace.structure_violations;
            in_edge[g.head(e)] = e;
        }
        for (VertexId m : st.marked) {
            ++trace.path_checks;
            Cost cost = 0;
            VertexId x = m;
            std::size_t steps = 0;
            while (x != st.root && in_edge[x] != kNoEdge && steps <= st.edges.size()) {
                cost += g.cost(in_edge[x]);
                x = g.tail(in_edge[x]);
                ++steps;
            }
            if (x != st.root || cost != table.distance[m]) ++trace.path_violations;
        }
        for (EdgeId e : st.edges) in_edge[g.head(e)] = kNoEdge;
    }

    // T is weakly connected and acyclic.
    if (!sep.separator_vertices.empty()) {
        UnionFind tf(n);
        bool acyclic = true;
        for (EdgeId e : sep.tree_edges) acyclic = tf.unite(g.tail(e), g.head(e)) && acyclic;
        const std::uint32_t rep = tf.find(sep.separator_vertices.front());
        bool connected = true;
        for (VertexId v : sep.separator_vertices) connected = connected && tf.find(v) == rep;
        if (!acyclic || !connected || sep.tree_edges.size() + 1 != sep.separator_vertices.size()) {
            ++trace.structure_violations;
        }
    }
    if (!std::includes(sep.tree_edges.begin(), sep.tree_edges.end(), sep.connector_edges.begin(),
                       sep.connector_edges.end())) {
        ++trace.structure_violations;
    }
}

void check_embedding(const EmbeddedDigraph& g, SolverTrace* trace) {
    if (trace == nullptr) return;
    ++trace->embedding_checks;
    try {
        validate_embedding(g);
    } catch (const Error&) {
        ++trace->embedding_violations;
    }
}

struct Outcome {
    bool feasible = false;
    Solution solution; // edges of the node's graph
    std::uint64_t calls = 0;
};

struct Node;

struct Branch {
    Subinstance pre;
    SeparatorResult sep;
    std::vector<Subinstance> parts;
    std::vector<std::unique_ptr<Node>> children;
};

struct Node {
    Instance inst;
    DistanceTable table;
    Cost farthest_terminal = 0;
    std::vector<Cost> sorted_distance;
    std::map<Cost, Outcome> memo;
    std::map<std::size_t, Branch> branches;

    explicit Node(Instance instance) : inst(std::move(instance)) {
        table = dijkstra(inst.graph, inst.roots);
        for (VertexId t : inst.terminals) farthest_terminal = std::max(farthest_terminal, table.distance[t]);
        sorted_distance = table.distance;
        std::sort(sorted_distance.begin(), sorted_distance.end());
    }

    std::size_t survivors(Cost bound) const {
        return static_cast<std::size_t>(
            std::upper_bound(sorted_distance.begin(), sorted_distance.end(), bound) -
            sorted_distance.begin());
    }
};

// Outcomes depend on the estimate only through its floor, since
// floor(x / 2) = floor(floor(x) / 2). Repeated (node, floor) pairs reuse the
// stored outcome and still add their logical call count.
class Recursion {
public:
    Recursion(const RecurseOptions& options, SolverTrace* trace)
        : options_(options), trace_(trace) {}

    Outcome run(Node& node, Dyadic opt) {
        const Cost key = opt.floor();
        if (auto it = node.memo.find(key); it != node.memo.end()) return it->second;

        Outcome out;
        out.calls = 1;
        if (opt.below_one() || node.farthest_terminal > key) {
            node.memo.emplace(key, out);
            return out;
        }
        if (node.inst.k() == 1) {
            out.feasible = true;
            out.solution = make_solution(node.inst, node.table.path_to(node.inst.graph, node.inst.terminals.front()));
            node.memo.emplace(key, out);
            return out;
        }

        const Outcome first = run(node, opt.half());
        out.calls = add_saturating(out.calls, first.calls);

        Branch& branch = branch_for(node, key);
        std::vector<Solution> subs;
        bool all_feasible = true;
        for (auto& child : branch.children) {
            Outcome sub = run(*child, opt);
            out.calls = add_saturating(out.calls, sub.calls);
            all_feasible = all_feasible && sub.feasible;
            subs.push_back(std::move(sub.solution));
        }

        if (all_feasible) {
            const MergeResult merged = merge_solutions(branch.pre.instance, branch.sep, branch.parts, subs);
            if (trace_ != nullptr && options_.audit) {
                ++trace_->merge_checks;
                if (!merged.identity_holds()) ++trace_->merge_violations;
            }
            std::vector<EdgeId> edges;
            edges.reserve(merged.edges.size());
            for (EdgeId e : merged.edges) edges.push_back(branch.pre.edge_origin[e]);
            Solution second = make_solution(node.inst, std::move(edges));
            if (trace_ != nullptr && options_.audit && !second.feasible) ++trace_->merge_violations;
            if (!first.feasible || second.cost <= first.solution.cost) {
                out.feasible = true;
                out.solution = std::move(second);
            }
        }
        if (!out.feasible && first.feasible) {
            out.feasible = true;
            out.solution = first.solution;
        }
        node.memo.emplace(key, out);
        return out;
    }

private:
    Branch& branch_for(Node& node, Cost bound) {
        const std::size_t count = node.survivors(bound);
        if (auto it = node.branches.find(count); it != node.branches.end()) return it->second;

        Branch b;
        b.pre = preprocess_far(node.inst, node.table, bound);
        if (options_.check_embeddings) check_embedding(b.pre.instance.graph, trace_);
        const Instance& pre = b.pre.instance;
        const DistanceTable table = dijkstra(pre.graph, pre.roots);
        const WeightAssignment w = WeightAssignment::unit_on(pre.graph.vertex_count(), pre.terminals);
        b.sep = separate(pre, table, w);
        if (trace_ != nullptr && options_.audit) audit_separator(pre, table, w, b.sep, *trace_);
        b.parts = build_subinstances(pre, b.sep);
        // Children own the subinstance graphs; merging only needs the lineage.
        for (Subinstance& part : b.parts) {
            if (trace_ != nullptr && options_.audit && 2 * part.instance.k() > pre.k()) {
                ++trace_->halving_violations;
            }
            if (options_.check_embeddings) check_embedding(part.instance.graph, trace_);
            b.children.push_back(std::make_unique<Node>(std::move(part.instance)));
        }
        return node.branches.emplace(count, std::move(b)).first->second;
    }

    RecurseOptions options_;
    SolverTrace* trace_;
};

} // namespace

std::string Dyadic::str() const {
    if (shift == 0) return std::to_string(num);
    if (shift < 63) return std::to_string(num) + "/" + std::to_string(std::int64_t{1} << shift);
    return std::to_string(num) + "/2^" + std::to_string(shift);
}

unsigned ceil_log2(std::uint64_t x) {
    unsigned l = 0;
    while (l < 64 && (std::uint64_t{1} << l) < x) ++l;
    return l;
}

Cost ScalingInfo::distance_bound(std::size_t k) const {
    const __int128 nk = static_cast<__int128>(n) * static_cast<__int128>(k);
    const __int128 b = nk * epsilon.den / epsilon.num + static_cast<__int128>(n);
    return b > std::numeric_limits<Cost>::max() ? std::numeric_limits<Cost>::max()
                                                : static_cast<Cost>(b);
}

ScaledInstance scale_costs(const Instance& inst, Rational epsilon) {
    if (epsilon.num <= 0 || epsilon.den <= 0) {
        throw Error(ErrorCode::InvalidEpsilon, "epsilon must be a positive rational");
    }
    const EmbeddedDigraph& g = inst.graph;
    const DistanceTable table = dijkstra(g, inst.roots);
    ScaledInstance out;
    out.info.epsilon = epsilon;
    out.info.n = g.vertex_count();
    for (VertexId t : inst.terminals) {
        if (!table.reached(t)) {
            throw Error(ErrorCode::Infeasible, "terminal " + std::to_string(t) + " is unreachable from every root");
        }
        out.info.delta = std::max(out.info.delta, table.distance[t]);
    }

    if (out.info.delta == 0) {
        std::vector<EdgeId> edges;
        for (VertexId t : inst.terminals) {
            for (EdgeId e : table.path_to(g, t)) edges.push_back(e);
        }
        out.immediate = make_solution(inst, std::move(edges));
        out.scaled.instance = inst;
        out.scaled.edge_origin.resize(g.edge_count());
        std::iota(out.scaled.edge_origin.begin(), out.scaled.edge_origin.end(), 0U);
        out.scaled.vertex_origin.resize(g.vertex_count());
        std::iota(out.scaled.vertex_origin.begin(), out.scaled.vertex_origin.end(), 0U);
        return out;
    }

    const __int128 limit = static_cast<__int128>(inst.k()) * out.info.delta;
    std::vector<std::uint8_t> keep_vertex(g.vertex_count(), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        keep_vertex[v] = table.reached(v) && table.distance[v] <= limit ? 1 : 0;
    }
    for (VertexId r : inst.roots) keep_vertex[r] = 1;
    std::vector<std::uint8_t> keep_edge(g.edge_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) keep_edge[e] = g.cost(e) <= limit ? 1 : 0;
    DerivedGraph derived = restrict_graph(g, keep_vertex, keep_edge);
    out.info.removed_vertices = g.vertex_count() - derived.graph.vertex_count();
    out.info.removed_edges = g.edge_count() - derived.graph.edge_count();

    const __int128 num = static_cast<__int128>(out.info.n) * epsilon.den;
    const __int128 den = static_cast<__int128>(epsilon.num) * out.info.delta;
    std::vector<Cost> costs(derived.graph.edge_count());
    for (EdgeId e = 0; e < derived.graph.edge_count(); ++e) {
        const __int128 scaled = (static_cast<__int128>(derived.graph.cost(e)) * num + den - 1) / den;
        if (scaled > std::numeric_limits<Cost>::max() / 4) {
            throw Error(ErrorCode::InvalidParams, "scaled cost overflows 64-bit arithmetic");
        }
        costs[e] = std::max<Cost>(1, static_cast<Cost>(scaled));
    }

    auto remap = [&](VertexId v) { return derived.map.vertex_forward[v]; };
    std::vector<VertexId> roots;
    std::vector<VertexId> terminals;
    for (VertexId r : inst.roots) roots.push_back(remap(r));
    for (VertexId t : inst.terminals) terminals.push_back(remap(t));
    out.scaled.instance = make_instance(derived.graph.with_costs(costs), std::move(roots), std::move(terminals));
    out.scaled.edge_origin = std::move(derived.map.edge_backward);
    out.scaled.vertex_origin = std::move(derived.map.vertex_backward);

    const DistanceTable scaled_table = dijkstra(out.scaled.instance.graph, out.scaled.instance.roots);
    for (VertexId v = 0; v < scaled_table.distance.size(); ++v) {
        if (!scaled_table.reached(v)) continue;
        out.info.max_scaled_distance = std::max(out.info.max_scaled_distance, scaled_table.distance[v]);
    }
    for (VertexId t : out.scaled.instance.terminals) {
        out.info.scaled_delta = std::max(out.info.scaled_delta, scaled_table.distance[t]);
    }
    return out;
}

Subinstance preprocess_far(const Instance& inst, Cost bound) {
    return preprocess_far(inst, dijkstra(inst.graph, inst.roots), bound);
}

Subinstance preprocess_far(const Instance& inst, const DistanceTable& table, Cost bound) {
    const EmbeddedDigraph& g = inst.graph;
    std::vector<std::uint8_t> keep(g.vertex_count(), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        keep[v] = table.reached(v) && table.distance[v] <= bound ? 1 : 0;
    }
    for (VertexId r : inst.roots) keep[r] = 1;
    DerivedGraph derived = restrict_graph(g, keep, {});
    Subinstance out;
    for (VertexId r : inst.roots) out.instance.roots.push_back(derived.map.vertex_forward[r]);
    for (VertexId t : inst.terminals) {
        if (keep[t] != 0) out.instance.terminals.push_back(derived.map.vertex_forward[t]);
    }
    out.instance.graph = std::move(derived.graph);
    out.edge_origin = std::move(derived.map.edge_backward);
    out.vertex_origin = std::move(derived.map.vertex_backward);
    return out;
}

std::vector<Subinstance> build_subinstances(const Instance& inst, const SeparatorResult& sep) {
    const EmbeddedDigraph& g = inst.graph;
    const std::size_t n = g.vertex_count();
    const std::vector<std::uint8_t> in_t = vertex_mask(n, sep.separator_vertices);
    const std::vector<std::uint8_t> is_terminal = vertex_mask(n, inst.terminals);

    // Base graph: g itself, or g with V(T) contracted into its first root.
    DerivedGraph contracted;
    const EmbeddedDigraph* base = &g;
    std::vector<VertexId> forward(n);
    std::vector<VertexId> back_vertex(n);
    std::vector<EdgeId> back_edge(g.edge_count());
    std::iota(forward.begin(), forward.end(), 0U);
    std::iota(back_vertex.begin(), back_vertex.end(), 0U);
    std::iota(back_edge.begin(), back_edge.end(), 0U);
    VertexId hub = kNoVertex;
    VertexId label = kNoVertex;
    if (!sep.separator_vertices.empty()) {
        for (VertexId r : inst.roots) {
            if (in_t[r] != 0) {
                label = r;
                break;
            }
        }
        if (label == kNoVertex) throw std::logic_error("separator tree contains no root");
        contracted = contract_connected(g, sep.separator_vertices, label);
        base = &contracted.graph;
        forward = contracted.map.vertex_forward;
        back_vertex = contracted.map.vertex_backward;
        back_edge = contracted.map.edge_backward;
        hub = forward[label];
    }

    const std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> group(base->vertex_count(), none);
    std::vector<std::size_t> piece_component;
    for (std::size_t c = 0; c < sep.components.size(); ++c) {
        const auto& members = sep.components[c];
        const bool has_terminal = std::any_of(members.begin(), members.end(),
                                              [&](VertexId v) { return is_terminal[v] != 0; });
        if (!has_terminal) continue;
        const auto p = static_cast<std::uint32_t>(piece_component.size());
        piece_component.push_back(c);
        for (VertexId v : members) group[forward[v]] = p;
    }

    std::vector<std::uint8_t> keep_edge(base->edge_count(), 1);
    if (hub != kNoVertex) {
        for (EdgeId e = 0; e < base->edge_count(); ++e) {
            if (base->head(e) == hub) keep_edge[e] = 0;
        }
    }
    std::vector<DerivedGraph> pieces = split_with_hub(*base, group, piece_component.size(), hub, keep_edge);

    std::vector<Subinstance> out;
    out.reserve(pieces.size());
    std::vector<VertexId> local(base->vertex_count(), kNoVertex);
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        DerivedGraph& piece = pieces[p];
        for (VertexId v = 0; v < piece.map.vertex_backward.size(); ++v) local[piece.map.vertex_backward[v]] = v;
        Subinstance sub;
        std::vector<VertexId> roots;
        std::vector<VertexId> terminals;
        if (hub != kNoVertex) roots.push_back(local[hub]);
        for (VertexId r : inst.roots) {
            if (in_t[r] == 0 && group[forward[r]] == p) roots.push_back(local[forward[r]]);
        }
        for (VertexId t : inst.terminals) {
            if (in_t[t] == 0 && group[forward[t]] == p) terminals.push_back(local[forward[t]]);
        }
        for (EdgeId e : piece.map.edge_backward) sub.edge_origin.push_back(back_edge[e]);
        for (VertexId v : piece.map.vertex_backward) sub.vertex_origin.push_back(back_vertex[v]);
        for (VertexId v : piece.map.vertex_backward) local[v] = kNoVertex;
        sub.instance = make_instance(std::move(piece.graph), std::move(roots), std::move(terminals));
        out.push_back(std::move(sub));
    }
    return out;
}

MergeResult merge_solutions(const Instance& inst, const SeparatorResult& sep,
                            std::span<const Subinstance> parts,
                            std::span<const Solution> subsolutions) {
    MergeResult out;
    out.edges = sep.purchased_edges();
    out.separator_cost = edge_set_cost(inst.graph, out.edges);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out.subinstance_cost += subsolutions[i].cost;
        for (EdgeId e : subsolutions[i].edges) out.edges.push_back(parts[i].edge_origin[e]);
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    out.merged_cost = edge_set_cost(inst.graph, out.edges);
    return out;
}

void SolverTrace::absorb(const SolverTrace& o) {
    separator_calls += o.separator_calls;
    balance_violations += o.balance_violations;
    path_checks += o.path_checks;
    path_violations += o.path_violations;
    mark_violations += o.mark_violations;
    max_marks = std::max(max_marks, o.max_marks);
    structure_violations += o.structure_violations;
    halving_violations += o.halving_violations;
    merge_checks += o.merge_checks;
    merge_violations += o.merge_violations;
    embedding_checks += o.embedding_checks;
    embedding_violations += o.embedding_violations;
}

std::uint64_t SolverTrace::violations() const {
    return balance_violations + path_violations + mark_violations + structure_violations +
           halving_violations + merge_violations + embedding_violations;
}

std::uint64_t RecursionBudget::call_bound(std::size_t k, unsigned ell, unsigned o) {
    const unsigned shift = 2 * ell + o;
    if (shift >= 64) return kSaturated;
    const unsigned __int128 b = static_cast<unsigned __int128>(k) << shift;
    return b > kSaturated ? kSaturated : static_cast<std::uint64_t>(b);
}

std::optional<Solution> dst_recurse(const Instance& inst, RecursionBudget& budget,
                                    const RecurseOptions& options, SolverTrace* trace) {
    Node root(inst);
    Recursion recursion(options, trace);
    Outcome out = recursion.run(root, budget.opt_estimate);
    budget.calls = add_saturating(budget.calls, out.calls);
    if (!out.feasible) return std::nullopt;
    return std::move(out.solution);
}

SolveReport solve(const Instance& inst, const SolveOptions& options) {
    SolveReport report;
    report.scaling.epsilon = options.epsilon;
    report.scaling.n = inst.graph.vertex_count();
    if (inst.k() == 0) {
        report.solution = make_solution(inst, {});
        return report;
    }
    ScaledInstance scaled = scale_costs(inst, options.epsilon);
    report.scaling = scaled.info;
    report.ell = ceil_log2(inst.k());
    if (scaled.immediate) {
        report.solution = *scaled.immediate;
    } else {
        const Instance& si = scaled.scaled.instance;
        RecursionBudget budget;
        budget.opt_estimate = Dyadic{static_cast<Cost>(si.k()) * scaled.info.scaled_delta, 0};
        budget.ell = ceil_log2(si.k());
        budget.o = ceil_log2(static_cast<std::uint64_t>(budget.opt_estimate.num));
        RecurseOptions ro{options.audit, options.check_embeddings};
        if (options.check_embeddings) check_embedding(si.graph, &report.trace);
        std::optional<Solution> found = dst_recurse(si, budget, ro, &report.trace);
        if (!found) throw std::logic_error("recursion failed at an estimate above the optimum");
        report.recursion_calls = budget.calls;
        report.o = budget.o;
        report.opt_estimate = budget.opt_estimate;
        report.scaled_cost = found->cost;
        std::vector<EdgeId> edges;
        for (EdgeId e : found->edges) edges.push_back(scaled.scaled.edge_origin[e]);
        report.solution = make_solution(inst, std::move(edges));
    }
    if (options.prune) report.solution = prune(inst, report.solution);
    return report;
}

Solution prune(const Instance& inst, const Solution& solution) {
    const EmbeddedDigraph& g = inst.graph;
    std::vector<EdgeId> order = solution.edges;
    std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        if (g.cost(a) != g.cost(b)) return g.cost(a) > g.cost(b);
        return a < b;
    });
    std::vector<EdgeId> current = solution.edges;
    for (EdgeId e : order) {
        std::vector<EdgeId> trial;
        trial.reserve(current.size());
        for (EdgeId x : current) {
            if (x != e) trial.push_back(x);
        }
        if (reaches_all_terminals(inst, trial)) current = std::move(trial);
    }
    return make_solution(inst, std::move(current));
}

} // namespace dstkit
