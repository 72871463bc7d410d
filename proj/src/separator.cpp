#include "dstkit/separator.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace dstkit {
namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0U); }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::uint32_t> parent_;
};

bool weakly_connected(const EmbeddedDigraph& g) {
    return g.vertex_count() <= 1 || weak_components(g).count() == 1;
}

// VertexId and EdgeId share a representation.
void sort_unique(std::vector<std::uint32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void fill_components(const EmbeddedDigraph& g, const WeightAssignment& w, SeparatorResult& r) {
    std::vector<std::uint8_t> removed(g.vertex_count(), 0);
    for (VertexId v : r.separator_vertices) removed[v] = 1;
    Components comps = weak_components(g, removed);
    r.components = std::move(comps.members);
    r.component_weights.assign(r.components.size(), 0);
    for (std::size_t i = 0; i < r.components.size(); ++i) {
        for (VertexId v : r.components[i]) r.component_weights[i] += w.weight[v];
    }
    r.total_weight = w.total();
}

SeparatorResult whole_graph(const EmbeddedDigraph& g, const WeightAssignment& w) {
    SeparatorResult r;
    fill_components(g, w, r);
    return r;
}

Cost purchase_cost(const EmbeddedDigraph& g, const SeparatorResult& r) {
    Cost total = 0;
    for (EdgeId e : r.purchased_edges()) total += g.cost(e);
    return total;
}

// Evaluates every non-empty subset of the targets, cheapest purchase first,
// and keeps the first balanced one. The full set is balanced by construction.
template <class Build>
SeparatorResult cheapest_balanced(const EmbeddedDigraph& g, const WeightAssignment& w,
                                  std::size_t target_count, Build build) {
    struct Candidate {
        Cost cost;
        int size;
        unsigned mask;
        SeparatorResult result;
    };
    std::vector<Candidate> candidates;
    const unsigned full = (1U << target_count) - 1U;
    for (unsigned mask = 1; mask <= full; ++mask) {
        SeparatorResult r = build(mask);
        const Cost c = purchase_cost(g, r);
        candidates.push_back({c, std::popcount(mask), mask, std::move(r)});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.cost, a.size, a.mask) < std::tie(b.cost, b.size, b.mask);
    });
    for (Candidate& c : candidates) {
        fill_components(g, w, c.result);
        if (c.result.balanced()) return std::move(c.result);
    }
    throw std::logic_error("separator: centroid corners do not balance the graph");
}

} // namespace

std::uint64_t WeightAssignment::total() const {
    return std::accumulate(weight.begin(), weight.end(), std::uint64_t{0});
}

WeightAssignment WeightAssignment::unit_on(std::size_t vertex_count,
                                           std::span<const VertexId> vertices) {
    WeightAssignment w;
    w.weight.assign(vertex_count, 0);
    for (VertexId v : vertices) w.weight[v] = 1;
    return w;
}

std::vector<EdgeId> SeparatorResult::purchased_edges() const {
    std::vector<EdgeId> out;
    std::set_difference(tree_edges.begin(), tree_edges.end(), connector_edges.begin(),
                        connector_edges.end(), std::back_inserter(out));
    return out;
}

bool SeparatorResult::balanced() const {
    return std::all_of(component_weights.begin(), component_weights.end(),
                       [&](std::uint64_t cw) { return 2 * cw <= total_weight; });
}

ThreePathSeparator three_path_separator(const EmbeddedDigraph& g,
                                        std::span<const EdgeId> spanning_tree, VertexId root,
                                        const WeightAssignment& w) {
    const std::size_t n = g.vertex_count();
    if (root >= n) throw Error(ErrorCode::UnknownVertex, "root " + std::to_string(root) + " does not exist");
    if (!weakly_connected(g)) throw Error(ErrorCode::NotConnected, "graph is not weakly connected");
    if (spanning_tree.size() + 1 != n) {
        throw Error(ErrorCode::NotSpanningTree, "spanning tree has " +
                                                    std::to_string(spanning_tree.size()) +
                                                    " edges for " + std::to_string(n) + " vertices");
    }
    std::vector<std::uint8_t> in_tree(g.edge_count(), 0);
    UnionFind uf(n);
    for (EdgeId e : spanning_tree) {
        if (e >= g.edge_count() || in_tree[e] != 0 || g.is_auxiliary(e) ||
            !uf.unite(g.tail(e), g.head(e))) {
            throw Error(ErrorCode::NotSpanningTree,
                        "edge " + std::to_string(e) + " breaks the spanning tree");
        }
        in_tree[e] = 1;
    }

    ThreePathSeparator out;
    if (w.total() == 0) return out;
    if (n == 1) {
        out.targets = {root};
        out.path_vertices = {{root}};
        out.path_edges = {{}};
        out.separator = {root};
        return out;
    }

    // Undirected tree parents from root.
    std::vector<EdgeId> parent_edge(n, kNoEdge);
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<VertexId> order{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (DartIndex d : g.darts_at(order[i])) {
            if (in_tree[d / 2] == 0) continue;
            const VertexId x = g.opposite(d);
            if (seen[x] != 0) continue;
            seen[x] = 1;
            parent_edge[x] = d / 2;
            order.push_back(x);
        }
    }

    EmbeddedDigraph tri = g;
    triangulate_faces(tri);
    const FaceStructure fs = trace_faces(tri);
    const std::size_t faces = fs.face_count();

    // Dual tree over non-tree edges (real and auxiliary).
    std::vector<std::vector<std::uint32_t>> dual(faces);
    std::size_t dual_edges = 0;
    for (EdgeId e = 0; e < tri.edge_count(); ++e) {
        if (e < g.edge_count() && in_tree[e] != 0) continue;
        const std::uint32_t a = fs.face_of_dart[2 * e];
        const std::uint32_t b = fs.face_of_dart[2 * e + 1];
        dual[a].push_back(b);
        dual[b].push_back(a);
        ++dual_edges;
    }
    if (dual_edges + 1 != faces) {
        throw Error(ErrorCode::NotPlanarEmbedding, "non-tree edges do not form a dual spanning tree");
    }

    std::vector<std::uint64_t> face_weight(faces, 0);
    std::vector<std::uint8_t> charged(n, 0);
    for (std::size_t f = 0; f < faces; ++f) {
        for (DartIndex d : fs.face(f)) {
            const VertexId v = tri.origin(d);
            if (charged[v] != 0) continue;
            charged[v] = 1;
            face_weight[f] += w.weight[v];
        }
    }

    std::vector<std::uint32_t> dual_parent(faces, kNoVertex);
    std::vector<std::uint32_t> dual_order{0};
    std::vector<std::uint8_t> dual_seen(faces, 0);
    dual_seen[0] = 1;
    for (std::size_t i = 0; i < dual_order.size(); ++i) {
        const std::uint32_t f = dual_order[i];
        for (std::uint32_t x : dual[f]) {
            if (dual_seen[x] != 0) continue;
            dual_seen[x] = 1;
            dual_parent[x] = f;
            dual_order.push_back(x);
        }
    }
    if (dual_order.size() != faces) {
        throw Error(ErrorCode::NotPlanarEmbedding, "dual of the non-tree edges is disconnected");
    }
    std::vector<std::uint64_t> subtree = face_weight;
    std::vector<std::uint64_t> heaviest_child(faces, 0);
    for (std::size_t i = faces; i-- > 1;) {
        const std::uint32_t f = dual_order[i];
        subtree[dual_parent[f]] += subtree[f];
        heaviest_child[dual_parent[f]] = std::max(heaviest_child[dual_parent[f]], subtree[f]);
    }
    const std::uint64_t total = subtree[0];
    std::uint32_t centroid = kNoVertex;
    for (std::uint32_t f = 0; f < faces; ++f) {
        const std::uint64_t worst = std::max(total - subtree[f], heaviest_child[f]);
        if (2 * worst <= total) {
            centroid = f;
            break;
        }
    }
    if (centroid == kNoVertex) throw std::logic_error("dual tree has no weighted centroid");

    for (DartIndex d : fs.face(centroid)) {
        const VertexId v = tri.origin(d);
        if (std::find(out.targets.begin(), out.targets.end(), v) == out.targets.end()) {
            out.targets.push_back(v);
        }
    }
    for (VertexId t : out.targets) {
        std::vector<VertexId> verts{t};
        std::vector<EdgeId> edges;
        for (VertexId x = t; x != root;) {
            const EdgeId e = parent_edge[x];
            edges.push_back(e);
            x = g.tail(e) == x ? g.head(e) : g.tail(e);
            verts.push_back(x);
        }
        std::reverse(verts.begin(), verts.end());
        std::reverse(edges.begin(), edges.end());
        out.separator.insert(out.separator.end(), verts.begin(), verts.end());
        out.path_vertices.push_back(std::move(verts));
        out.path_edges.push_back(std::move(edges));
    }
    sort_unique(out.separator);
    return out;
}

SeparatorResult directed_separator(const EmbeddedDigraph& g, VertexId root,
                                   const WeightAssignment& w) {
    const VertexId roots[] = {root};
    return directed_separator(g, dijkstra(g, roots), w);
}

SeparatorResult directed_separator(const EmbeddedDigraph& g, const DistanceTable& table,
                                   const WeightAssignment& w) {
    if (table.sources.size() != 1) {
        throw Error(ErrorCode::InvalidParams, "directed separator takes exactly one root");
    }
    const VertexId root = table.sources.front();
    std::vector<EdgeId> tree;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!table.reached(v)) {
            throw Error(ErrorCode::UnreachableVertex,
                        "vertex " + std::to_string(v) + " is not reachable from the root");
        }
        if (table.parent_edge[v] != kNoEdge) tree.push_back(table.parent_edge[v]);
    }
    if (w.total() == 0) return whole_graph(g, w);

    const ThreePathSeparator tps = three_path_separator(g, tree, root, w);
    auto build = [&](unsigned mask) {
        SeparatorResult r;
        RootSubtree sub{0, root, {}, {}};
        r.separator_vertices.push_back(root);
        for (std::size_t i = 0; i < tps.targets.size(); ++i) {
            if ((mask >> i & 1U) == 0) continue;
            r.targets.push_back(tps.targets[i]);
            sub.marked.push_back(tps.targets[i]);
            for (EdgeId e : table.path_to(g, tps.targets[i])) {
                sub.edges.push_back(e);
                r.separator_vertices.push_back(g.head(e));
            }
        }
        sort_unique(sub.edges);
        sort_unique(sub.marked);
        sort_unique(r.separator_vertices);
        r.tree_edges = sub.edges;
        r.subtrees.push_back(std::move(sub));
        return r;
    };
    return cheapest_balanced(g, w, tps.targets.size(), build);
}

SeparatorResult multirooted_separator(const EmbeddedDigraph& g, std::span<const VertexId> roots,
                                      const WeightAssignment& w) {
    return multirooted_separator(g, dijkstra(g, roots), w);
}

SeparatorResult multirooted_separator(const EmbeddedDigraph& g, const DistanceTable& table,
                                      const WeightAssignment& w) {
    const std::size_t n = g.vertex_count();
    if (!weakly_connected(g)) throw Error(ErrorCode::NotConnected, "graph is not weakly connected");
    for (VertexId v = 0; v < n; ++v) {
        if (!table.reached(v)) {
            throw Error(ErrorCode::UnreachableVertex,
                        "vertex " + std::to_string(v) + " is not reachable from any root");
        }
    }
    if (w.total() == 0) return whole_graph(g, w);

    // Spanning multi-rooted arborescence: BFS arborescences plus connector
    // edges chosen by a union-find scan in edge id order.
    UnionFind uf(n);
    std::vector<std::uint8_t> arborescence_edge(g.edge_count(), 0);
    std::vector<EdgeId> spanning;
    for (VertexId v = 0; v < n; ++v) {
        const EdgeId e = table.parent_edge[v];
        if (e == kNoEdge) continue;
        arborescence_edge[e] = 1;
        uf.unite(g.tail(e), g.head(e));
        spanning.push_back(e);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (arborescence_edge[e] != 0 || g.is_auxiliary(e)) continue;
        if (uf.unite(g.tail(e), g.head(e))) spanning.push_back(e);
    }

    const VertexId first_root = table.sources.front();
    const ThreePathSeparator tps = three_path_separator(g, spanning, first_root, w);

    auto build = [&](unsigned mask) {
        SeparatorResult r;
        std::vector<std::vector<VertexId>> marks(table.sources.size());
        std::vector<EdgeId> connectors;
        for (std::size_t j = 0; j < tps.targets.size(); ++j) {
            if ((mask >> j & 1U) == 0) continue;
            r.targets.push_back(tps.targets[j]);
            const auto& path = tps.path_vertices[j];
            // First and last vertex of the path inside each arborescence.
            std::vector<std::size_t> first(table.sources.size(), path.size());
            std::vector<std::size_t> last(table.sources.size(), path.size());
            for (std::size_t p = 0; p < path.size(); ++p) {
                const std::uint32_t i = table.owner[path[p]];
                if (first[i] == path.size()) first[i] = p;
                last[i] = p;
            }
            for (std::size_t i = 0; i < table.sources.size(); ++i) {
                if (first[i] == path.size()) continue;
                marks[i].push_back(path[first[i]]);
                marks[i].push_back(path[last[i]]);
            }
            for (EdgeId e : tps.path_edges[j]) {
                if (arborescence_edge[e] == 0) connectors.push_back(e);
            }
        }
        for (std::uint32_t i = 0; i < table.sources.size(); ++i) {
            if (marks[i].empty()) continue;
            sort_unique(marks[i]);
            if (marks[i].size() > 4) {
                throw std::logic_error("multi-rooted separator marked " +
                                       std::to_string(marks[i].size()) +
                                       " vertices in one arborescence");
            }
            RootSubtree sub{i, table.sources[i], marks[i], {}};
            r.separator_vertices.push_back(sub.root);
            for (VertexId m : sub.marked) {
                for (EdgeId e : table.path_to(g, m)) {
                    sub.edges.push_back(e);
                    r.separator_vertices.push_back(g.head(e));
                }
            }
            sort_unique(sub.edges);
            r.tree_edges.insert(r.tree_edges.end(), sub.edges.begin(), sub.edges.end());
            r.subtrees.push_back(std::move(sub));
        }
        sort_unique(connectors);
        r.connector_edges = connectors;
        r.tree_edges.insert(r.tree_edges.end(), connectors.begin(), connectors.end());
        sort_unique(r.tree_edges);
        sort_unique(r.separator_vertices);
        return r;
    };
    return cheapest_balanced(g, w, tps.targets.size(), build);
}

} // namespace dstkit
