#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dstkit/embedded_digraph.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace dstkit;

namespace {

std::vector<std::uint32_t> component_labels(const Components& c) {
    return oracle::canonical_labels(c.component_of);
}

// Slot that places a new dart between darts walk[i-1] and walk[i] of a face.
RotationSlot slot_in_face(const EmbeddedDigraph& g, std::span<const DartIndex> walk, std::size_t i) {
    const DartIndex prev = walk[(i + walk.size() - 1) % walk.size()];
    return RotationSlot{g.origin(walk[i]), Dart::from_index(reverse_dart(prev))};
}

} // namespace

TEST_SUITE("planar_core") {

TEST_CASE("single vertex has one face") {
    const EmbeddedDigraph g(1, {}, {{}});
    CHECK(validate_embedding(g) == 1);
}

TEST_CASE("directed triangle has two faces") {
    CHECK(validate_embedding(fixture::triangle()) == 2);
}

TEST_CASE("K5 with ascending rotations is rejected") {
    const EmbeddedDigraph g = fixture::naive_k5();
    CHECK_FALSE(oracle::euler_holds(g));
    try {
        validate_embedding(g);
        FAIL("expected NotPlanarEmbedding");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPlanarEmbedding);
    }
}

TEST_CASE("face count agrees with the independent walk") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const InstanceFile f = fixture::small_instance(seed, 10 + seed % 30, 2, 1);
        const EmbeddedDigraph& g = f.instance.graph;
        CHECK(validate_embedding(g) == oracle::face_count(g));
        CHECK(oracle::euler_holds(g));
    }
}

TEST_CASE("face traversal visits every dart once") {
    const InstanceFile f = fixture::generated(7, 64, 4, 1);
    const FaceStructure faces = trace_faces(f.instance.graph);
    std::vector<int> hits(f.instance.graph.dart_count(), 0);
    for (std::size_t i = 0; i < faces.face_count(); ++i) {
        for (DartIndex d : faces.face(i)) {
            ++hits[d];
            CHECK(faces.face_of_dart[d] == i);
        }
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

TEST_CASE("malformed rotations are rejected") {
    std::vector<EdgeRecord> edges{{0, 1, 1, false}};
    SUBCASE("missing dart") {
        CHECK_THROWS_AS(EmbeddedDigraph(2, edges, {{Dart{0, Side::Tail}}, {}}), Error);
    }
    SUBCASE("duplicated dart") {
        try {
            EmbeddedDigraph(2, edges, {{Dart{0, Side::Tail}, Dart{0, Side::Tail}}, {Dart{0, Side::Head}}});
            FAIL("expected MalformedRotation");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MalformedRotation);
        }
    }
    SUBCASE("dart at the wrong vertex") {
        CHECK_THROWS_AS(EmbeddedDigraph(2, edges, {{Dart{0, Side::Head}}, {Dart{0, Side::Tail}}}), Error);
    }
    SUBCASE("self-loop") {
        std::vector<EdgeRecord> loop{{0, 0, 1, false}};
        try {
            EmbeddedDigraph(1, loop, {{Dart{0, Side::Tail}, Dart{0, Side::Head}}});
            FAIL("expected MalformedGraph");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MalformedGraph);
        }
    }
    SUBCASE("negative cost") {
        std::vector<EdgeRecord> neg{{0, 1, -1, false}};
        try {
            EmbeddedDigraph(2, neg, {{Dart{0, Side::Tail}}, {Dart{0, Side::Head}}});
            FAIL("expected NegativeCost");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NegativeCost);
        }
    }
}

TEST_CASE("weak components, small cases") {
    SUBCASE("edgeless graph on three vertices") {
        const EmbeddedDigraph g(3, {}, {{}, {}, {}});
        CHECK(weak_components(g).count() == 3);
    }
    SUBCASE("triangle plus isolated vertex") {
        const EmbeddedDigraph g = fixture::embed({{0, 0}, {1, 0}, {0, 1}, {5, 5}},
                                                 {{0, 1, 1, false}, {1, 2, 1, false}, {2, 0, 1, false}});
        const Components c = weak_components(g);
        REQUIRE(c.count() == 2);
        CHECK(c.members[0] == std::vector<VertexId>{0, 1, 2});
        CHECK(c.members[1] == std::vector<VertexId>{3});
    }
}

TEST_CASE("4x4 grid minus a column splits in two") {
    const EmbeddedDigraph g = fixture::grid(4, 4);
    const std::vector<VertexId> column{1, 5, 9, 13};
    const DerivedGraph d = delete_vertices(g, column);
    CHECK(validate_embedding(d.graph) == oracle::face_count(d.graph));
    const Components c = weak_components(d.graph);
    CHECK(c.count() == 2);
    const std::vector<oracle::Arc> arcs = oracle::arcs_of(d.graph);
    CHECK(component_labels(c) == oracle::flood_fill_labels(d.graph.vertex_count(), arcs));

    std::vector<std::uint8_t> removed(16, 0);
    for (VertexId v : column) removed[v] = 1;
    const Components masked = weak_components(g, removed);
    CHECK(masked.count() == 2);
    const std::vector<oracle::Arc> all = oracle::arcs_of(g);
    CHECK(component_labels(masked) == oracle::flood_fill_labels(16, all, removed));
}

TEST_CASE("weak components agree with union-find on random graphs") {
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        const InstanceFile f = fixture::small_instance(seed, 4 + seed % 37, 1, 1, GridStyle::GridDiagonals, 0.25);
        const EmbeddedDigraph& g = f.instance.graph;
        std::vector<std::uint8_t> removed(g.vertex_count(), 0);
        for (auto& r : removed) r = std::bernoulli_distribution(0.3)(rng) ? 1 : 0;
        const std::vector<oracle::Arc> arcs = oracle::arcs_of(g);
        REQUIRE(component_labels(weak_components(g, removed)) ==
                oracle::union_find_labels(g.vertex_count(), arcs, removed));
    }
}

TEST_CASE("delete_vertices") {
    SUBCASE("deleting nothing is the identity") {
        const EmbeddedDigraph g = fixture::grid(3, 3, true);
        const DerivedGraph d = delete_vertices(g, {});
        REQUIRE(d.graph.vertex_count() == g.vertex_count());
        REQUIRE(d.graph.edge_count() == g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            CHECK(d.graph.tail(e) == g.tail(e));
            CHECK(d.graph.head(e) == g.head(e));
        }
        for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(d.graph.rotation(v) == g.rotation(v));
    }
    SUBCASE("triangle minus a vertex is one edge") {
        const std::vector<VertexId> gone{2};
        const DerivedGraph d = delete_vertices(fixture::triangle(), gone);
        REQUIRE(d.graph.vertex_count() == 2);
        REQUIRE(d.graph.edge_count() == 1);
        CHECK(d.graph.tail(0) == 0);
        CHECK(d.graph.head(0) == 1);
    }
    SUBCASE("grid minus a shortest path matches the explicit edge list") {
        const InstanceFile f = fixture::generated(5, 49, 3, 1);
        const EmbeddedDigraph& g = f.instance.graph;
        const std::vector<VertexId> path{0, 1, 2, 3, 10, 17};
        const DerivedGraph d = delete_vertices(g, path);
        std::vector<std::uint8_t> removed(g.vertex_count(), 0);
        for (VertexId v : path) removed[v] = 1;
        std::vector<oracle::Arc> kept;
        for (const oracle::Arc& a : oracle::arcs_of(g)) {
            if (removed[a.tail] == 0 && removed[a.head] == 0) {
                kept.push_back({d.map.vertex_forward[a.tail], d.map.vertex_forward[a.head], a.cost});
            }
        }
        CHECK(component_labels(weak_components(d.graph)) ==
              oracle::union_find_labels(d.graph.vertex_count(), kept));
        CHECK(oracle::euler_holds(d.graph));
    }
}

TEST_CASE("contract_connected") {
    SUBCASE("single vertex is a relabelling") {
        const EmbeddedDigraph g = fixture::grid(3, 3);
        const std::vector<VertexId> t{4};
        const DerivedGraph d = contract_connected(g, t, 4);
        CHECK(d.graph.vertex_count() == 9);
        CHECK(d.graph.edge_count() == g.edge_count());
        CHECK(oracle::quotient_arcs(oracle::arcs_of(g), d.map.vertex_forward) ==
              oracle::quotient_arcs(oracle::arcs_of(d.graph), std::vector<VertexId>{0, 1, 2, 3, 4, 5, 6, 7, 8}));
    }
    SUBCASE("triangle, contract two vertices") {
        const std::vector<VertexId> t{0, 1};
        const DerivedGraph d = contract_connected(fixture::triangle(), t, 0);
        REQUIRE(d.graph.vertex_count() == 2);
        REQUIRE(d.graph.edge_count() == 2);
        const VertexId label = d.map.vertex_forward[0];
        const VertexId w = d.map.vertex_forward[2];
        std::vector<std::pair<VertexId, VertexId>> got{{d.graph.tail(0), d.graph.head(0)},
                                                       {d.graph.tail(1), d.graph.head(1)}};
        std::sort(got.begin(), got.end());
        std::vector<std::pair<VertexId, VertexId>> want{{label, w}, {w, label}};
        std::sort(want.begin(), want.end());
        CHECK(got == want);
        CHECK(validate_embedding(d.graph) == 2);
    }
    SUBCASE("3x3 grid, contract a three-vertex path") {
        const EmbeddedDigraph g = fixture::grid(3, 3, true);
        const std::vector<VertexId> t{3, 4, 5};
        const DerivedGraph d = contract_connected(g, t, 4);
        std::vector<VertexId> relabel(9);
        for (VertexId v = 0; v < 9; ++v) relabel[v] = d.map.vertex_forward[v];
        const std::vector<VertexId> identity = [&] {
            std::vector<VertexId> id(d.graph.vertex_count());
            std::iota(id.begin(), id.end(), 0U);
            return id;
        }();
        CHECK(oracle::quotient_arcs(oracle::arcs_of(g), relabel) ==
              oracle::quotient_arcs(oracle::arcs_of(d.graph), identity));
        CHECK(oracle::euler_holds(d.graph));
    }
    SUBCASE("errors") {
        const EmbeddedDigraph g = fixture::grid(3, 3);
        const std::vector<VertexId> apart{0, 8};
        CHECK_THROWS_AS(contract_connected(g, apart, 0), Error);
        const std::vector<VertexId> pair{0, 1};
        try {
            contract_connected(g, pair, 5);
            FAIL("expected LabelCollision");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::LabelCollision);
        }
        const std::vector<VertexId> bad{0, 99};
        try {
            contract_connected(g, bad, 0);
            FAIL("expected UnknownVertex");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnknownVertex);
        }
    }
    SUBCASE("backward map is injective and keeps costs") {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const InstanceFile f = fixture::generated(seed, 36, 3, 1);
            const EmbeddedDigraph& g = f.instance.graph;
            // a connected set: BFS ball around vertex 0
            std::vector<VertexId> ball{0};
            std::vector<std::uint8_t> in(g.vertex_count(), 0);
            in[0] = 1;
            for (std::size_t i = 0; i < ball.size() && ball.size() < 2 + seed % 9; ++i) {
                for (DartIndex dd : g.darts_at(ball[i])) {
                    const VertexId x = g.opposite(dd);
                    if (in[x] == 0 && ball.size() < 2 + seed % 9) {
                        in[x] = 1;
                        ball.push_back(x);
                    }
                }
            }
            const DerivedGraph d = contract_connected(g, ball, 0);
            CHECK(oracle::euler_holds(d.graph));
            std::vector<EdgeId> back = d.map.edge_backward;
            for (EdgeId e = 0; e < d.graph.edge_count(); ++e) CHECK(d.graph.cost(e) == g.cost(back[e]));
            std::sort(back.begin(), back.end());
            CHECK(std::adjacent_find(back.begin(), back.end()) == back.end());
        }
    }
}

TEST_CASE("add_auxiliary_edge") {
    const EmbeddedDigraph square = fixture::grid(2, 2);
    const FaceStructure faces = trace_faces(square);
    REQUIRE(faces.face_count() == 2);
    SUBCASE("chord inside a quadrilateral face") {
        const auto walk = faces.face(0);
        REQUIRE(walk.size() == 4);
        const AuxiliaryInsertion ins =
            add_auxiliary_edge(square, slot_in_face(square, walk, 0), slot_in_face(square, walk, 2));
        CHECK(ins.graph.is_auxiliary(ins.edge));
        CHECK(ins.graph.cost(ins.edge) == 0);
        CHECK(validate_embedding(ins.graph) == 3);
    }
    SUBCASE("chord across two faces") {
        try {
            add_auxiliary_edge(square, slot_in_face(square, faces.face(0), 0),
                               slot_in_face(square, faces.face(1), 2));
            FAIL("expected NotPlanarEmbedding");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotPlanarEmbedding);
        }
    }
}

TEST_CASE("triangulating a pentagonal face adds two chords") {
    std::vector<fixture::Point> pts;
    for (int i = 0; i < 5; ++i) pts.push_back({std::cos(2 * M_PI * i / 5), std::sin(2 * M_PI * i / 5)});
    std::vector<EdgeRecord> edges;
    for (VertexId i = 0; i < 5; ++i) edges.push_back({i, VertexId((i + 1) % 5), 1, false});
    edges.push_back({0, 2, 1, false});
    edges.push_back({0, 3, 1, false});
    EmbeddedDigraph g = fixture::embed(pts, edges);
    REQUIRE(oracle::face_sizes(g) == std::vector<std::size_t>{3, 3, 3, 5});
    CHECK(triangulate_faces(g) == 2);
    CHECK(oracle::face_sizes(g) == std::vector<std::size_t>(6, 3));
    CHECK(oracle::euler_holds(g));
}

TEST_CASE("triangulated random graphs keep Euler and have small faces") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const InstanceFile f = fixture::small_instance(seed, 5 + seed % 40, 1, 1, GridStyle::Grid, 0.3);
        EmbeddedDigraph g = f.instance.graph;
        triangulate_faces(g);
        CHECK(oracle::euler_holds(g));
        const FaceStructure faces = trace_faces(g);
        for (std::size_t i = 0; i < faces.face_count(); ++i) {
            std::vector<VertexId> vs;
            for (DartIndex d : faces.face(i)) vs.push_back(g.origin(d));
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            CHECK(vs.size() <= 3);
        }
    }
}

TEST_CASE("derived graphs stay planar under mixed operations") {
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        EmbeddedDigraph g = fixture::generated(seed, 30 + seed % 30, 3, 1).instance.graph;
        for (int step = 0; step < 4 && g.vertex_count() > 3; ++step) {
            const VertexId v = std::uniform_int_distribution<VertexId>(0, VertexId(g.vertex_count() - 1))(rng);
            if (step % 2 == 0) {
                const std::vector<VertexId> gone{v};
                g = delete_vertices(g, gone).graph;
            } else if (g.degree(v) > 0) {
                const VertexId w = g.opposite(g.first_dart(v));
                const std::vector<VertexId> t{std::min(v, w), std::max(v, w)};
                g = contract_connected(g, t, v).graph;
            }
            REQUIRE(oracle::euler_holds(g));
            CHECK_NOTHROW(validate_embedding(g));
        }
    }
}

TEST_CASE("split_with_hub keeps rotations planar") {
    const EmbeddedDigraph g = fixture::grid(3, 3, true);
    std::vector<std::uint32_t> group{0, 0, 1, 0, 0, 1, 0, 0, 1};
    const std::vector<DerivedGraph> parts = split_with_hub(g, group, 2, 4);
    REQUIRE(parts.size() == 2);
    for (const DerivedGraph& p : parts) {
        CHECK(oracle::euler_holds(p.graph));
        for (EdgeId e = 0; e < p.graph.edge_count(); ++e) {
            const EdgeId pe = p.map.edge_backward[e];
            CHECK(p.graph.cost(e) == g.cost(pe));
            CHECK(p.map.vertex_backward[p.graph.tail(e)] == g.tail(pe));
            CHECK(p.map.vertex_backward[p.graph.head(e)] == g.head(pe));
        }
    }
    CHECK(parts[1].graph.vertex_count() == 4);
}

}
