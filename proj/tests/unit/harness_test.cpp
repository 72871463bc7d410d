#include <algorithm>
#include <filesystem>

#include "doctest.h"
#include "dstkit/bench.hpp"
#include "dstkit/exact_oracle.hpp"
#include "dstkit/generator.hpp"
#include "dstkit/svg.hpp"
#include "dstkit/verify.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace dstkit;

namespace {

const char* kMinimal =
    "dstkit-instance 1\n"
    "name minimal\n"
    "seed 0\n"
    "vertices 2\n"
    "v 0 root\n"
    "v 1 terminal\n"
    "edges 1\n"
    "e 0 0 1 5\n"
    "rotations 2\n"
    "r 0 0t\n"
    "r 1 0h\n"
    "end\n";

ErrorCode parse_error(const std::string& text, int digits = -1) {
    try {
        parse_instance(text, digits);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("parse succeeded");
    return ErrorCode::IoError;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const std::size_t at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("minimal instance parses and round-trips") {
    const InstanceFile f = parse_instance(kMinimal);
    CHECK(f.name == "minimal");
    CHECK(f.instance.roots == std::vector<VertexId>{0});
    CHECK(f.instance.terminals == std::vector<VertexId>{1});
    CHECK(f.instance.graph.cost(0) == 5);
    CHECK(emit_instance(f) == kMinimal);
}

TEST_CASE("comments and blank lines are skipped") {
    const std::string text = replace(kMinimal, "vertices 2\n", "# two vertices\n\nvertices 2\n");
    CHECK(emit_instance(parse_instance(text)) == kMinimal);
}

TEST_CASE("parse errors") {
    CHECK(parse_error(replace(kMinimal, "r 0 0t\n", "r 0 0t 0t\n")) == ErrorCode::MalformedRotation);
    CHECK(parse_error(replace(kMinimal, "v 1 terminal", "v 1 terminal,root")) == ErrorCode::RoleConflict);
    CHECK(parse_error(replace(kMinimal, "v 0 root", "v 0 root cost 3")) == ErrorCode::RoleConflict);
    CHECK(parse_error(replace(kMinimal, "e 0 0 1 5", "e 0 0 1 five")) == ErrorCode::SyntaxError);
    CHECK(parse_error(replace(kMinimal, "dstkit-instance 1", "dstkit-instance 2")) == ErrorCode::SyntaxError);
    CHECK(parse_error(replace(kMinimal, "end\n", "")) == ErrorCode::SyntaxError);
    CHECK(parse_error(replace(kMinimal, "e 0 0 1 5", "e 0 0 1 -5")) == ErrorCode::NegativeCost);
    CHECK(parse_error(replace(kMinimal, "e 0 0 1 5", "e 0 0 1 2.5")) == ErrorCode::SyntaxError);
    try {
        parse_instance(replace(kMinimal, "e 0 0 1 5", "e 0 0 1 x"));
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 8") != std::string::npos);
    }
    CHECK(parse_error(emit_instance(wrap_instance(make_instance(fixture::naive_k5(), {0}, {4}), "k5"))) ==
          ErrorCode::NotPlanarEmbedding);
}

TEST_CASE("fixed-point costs") {
    const std::string text = replace(kMinimal, "e 0 0 1 5", "e 0 0 1 2.345");
    CHECK(parse_instance(text, 2).instance.graph.cost(0) == 235);
    CHECK(parse_instance(text, 3).instance.graph.cost(0) == 2345);
    CHECK(parse_instance(text, 0).instance.graph.cost(0) == 2);
    CHECK(parse_instance(kMinimal, 2).instance.graph.cost(0) == 500);
}

TEST_CASE("generator output round-trips byte for byte") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        GeneratorParams p;
        p.seed = seed;
        p.n = 10 + seed % 90;
        p.k = 1 + seed % 8;
        p.roots = 1 + seed % 3;
        p.style = seed % 2 == 0 ? GridStyle::Grid : GridStyle::GridDiagonals;
        const std::string text = emit_instance(generate_instance(p));
        REQUIRE(emit_instance(parse_instance(text)) == text);
    }
}

TEST_CASE("generator") {
    SUBCASE("deterministic per seed") {
        GeneratorParams p;
        p.seed = 42;
        CHECK(emit_instance(generate_instance(p)) == emit_instance(generate_instance(p)));
        GeneratorParams q = p;
        q.seed = 43;
        CHECK(emit_instance(generate_instance(p)) != emit_instance(generate_instance(q)));
    }
    SUBCASE("planar and feasible") {
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            const InstanceFile f = fixture::generated(seed, 5 + seed % 150, 1 + seed % 10, 1 + seed % 4,
                                                      seed % 3, 3 + seed % 20);
            const EmbeddedDigraph& g = f.instance.graph;
            REQUIRE(oracle::euler_holds(g));
            CHECK_NOTHROW(validate_embedding(g));
            const std::vector<oracle::Arc> arcs = oracle::arcs_of(g);
            const std::vector<std::uint8_t> seen = oracle::reachable(g.vertex_count(), arcs, f.instance.roots);
            for (VertexId t : f.instance.terminals) CHECK(seen[t] == 1);
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                CHECK(g.cost(e) >= Cost(seed % 3));
                CHECK(g.cost(e) <= Cost(3 + seed % 20));
            }
        }
    }
    SUBCASE("n=100, k=8, R=2 corpus is oracle-solvable") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const InstanceFile f = fixture::generated(seed, 100, 8, 2);
            CHECK(f.instance.graph.vertex_count() == 100);
            CHECK(f.instance.roots.size() == 2);
            CHECK(f.instance.k() == 8);
            CHECK(exact_dst(f.instance).feasible);
        }
    }
    SUBCASE("bad parameters") {
        GeneratorParams p;
        p.n = 5;
        p.k = 5;
        CHECK_THROWS_AS(generate_instance(p), Error);
        p.k = 2;
        p.cost_min = 5;
        p.cost_max = 4;
        CHECK_THROWS_AS(generate_instance(p), Error);
        p.cost_min = -1;
        CHECK_THROWS_AS(generate_instance(p), Error);
        CHECK_THROWS_AS(parse_grid_style("hex"), Error);
    }
}

TEST_CASE("solution files") {
    const std::vector<EdgeId> edges{3, 1, 4};
    const std::string text = emit_solution("demo", edges, 17);
    CHECK(text == "dstkit-solution 1\ninstance demo\nedges 3\n3\n1\n4\ncost 17\n");
    const SolutionFile s = parse_solution(text);
    CHECK(s.instance_name == "demo");
    CHECK(s.edges == edges);
    CHECK(s.cost == 17);
    CHECK_THROWS_AS(parse_solution("dstkit-solution 1\ninstance demo\nedges 2\n1\ncost 3\n"), Error);
}

TEST_CASE("verifier") {
    // 0 -> 1 -> 2 and 0 -> 3, terminals 2 and 3
    const EmbeddedDigraph g = fixture::embed({{0, 0}, {1, 0}, {2, 0}, {0, 1}},
                                             {{0, 1, 1, false}, {1, 2, 2, false}, {0, 3, 4, false}});
    InstanceFile f = wrap_instance(make_instance(g, {0}, {2, 3}), "v");
    CHECK(verify_solution(f, std::vector<EdgeId>{0, 1, 2}, 7).ok);
    SUBCASE("missing terminal path") {
        const VerifyResult r = verify_solution(f, std::vector<EdgeId>{0, 1});
        CHECK_FALSE(r.ok);
        CHECK(r.code == ErrorCode::Infeasible);
        CHECK(r.unreached_terminals == std::vector<VertexId>{3});
        CHECK(r.message.find('3') != std::string::npos);
    }
    SUBCASE("cost mismatch") {
        const VerifyResult r = verify_solution(f, std::vector<EdgeId>{0, 1, 2}, 6);
        CHECK_FALSE(r.ok);
        CHECK(r.feasible);
        CHECK(r.cost == 7);
    }
    SUBCASE("bad and repeated ids") {
        CHECK_FALSE(verify_solution(f, std::vector<EdgeId>{0, 1, 9}).ok);
        CHECK_FALSE(verify_solution(f, std::vector<EdgeId>{0, 1, 2, 2}).ok);
    }
    SUBCASE("node costs are counted") {
        f.node_costs = {0, 5, 0, 0};
        CHECK(verify_solution(f, std::vector<EdgeId>{0, 1, 2}, 12).ok);
    }
}

TEST_CASE("node-cost instances through the file pipeline") {
    const std::string text =
        "dstkit-instance 1\nname nodes\nseed 0\nvertices 3\n"
        "v 0 root\nv 1 steiner cost 9\nv 2 terminal\n"
        "edges 2\ne 0 0 1 1\ne 1 1 2 2\n"
        "rotations 3\nr 0 0t\nr 1 0h 1t\nr 2 1h\nend\n";
    const InstanceFile f = parse_instance(text);
    CHECK(f.has_node_costs());
    CHECK(emit_instance(f) == text);
    const PipelineResult a = solve_file(f, SolveOptions{});
    const PipelineResult b = exact_file(f, kDefaultOracleCap);
    CHECK(a.cost == 12);
    CHECK(b.cost == 12);
    CHECK(verify_solution(f, a.edges, a.cost).ok);
}

TEST_CASE("run records and bench output") {
    const InstanceFile f = fixture::generated(3, 60, 6, 1);
    BenchOptions opts;
    opts.epsilon = Rational{1, 2};
    opts.timing = false;
    PipelineResult res;
    const RunRecord r = run_instance(f, opts, &res);
    CHECK(r.error.empty());
    CHECK(r.oracle_cost.has_value());
    CHECK(r.bound_ok);
    CHECK(r.budget_ok);
    CHECK(r.approx_cost == res.cost);
    CHECK(r.recursion_calls <= RecursionBudget::call_bound(r.k, r.ell, r.o));
    const std::string csv = records_to_csv({r}, false);
    CHECK(csv.rfind("instance,seed,epsilon,k,R,n,m,approx_cost,oracle_cost,ratio,recursion_calls,ell,o,wall_ms\n", 0) ==
          0);
    CHECK(csv.find(",1/2,6,1,60,") != std::string::npos);
    CHECK(csv.substr(csv.size() - 3) == ",0\n");
    const std::string json = records_to_json({r}, false);
    CHECK(json.find("\"approx_cost\"") != std::string::npos);
    CHECK(json.find("\"wall_ms\": 0.0") != std::string::npos);

    const BenchSummary s = summarize({r, r});
    CHECK(s.runs == 2);
    CHECK(s.with_oracle == 2);
    CHECK(s.bound_violations == 0);
    CHECK(format_summary(s).find("bound violations: 0") != std::string::npos);

    BenchOptions capped = opts;
    capped.oracle_cap = 2;
    CHECK_FALSE(run_instance(f, capped).oracle_cost.has_value());
}

TEST_CASE("bench over a directory") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "dstkit_bench_unit";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const InstanceFile f = fixture::generated(seed, 40, 4, 1 + seed % 2);
        write_text_file((dir / (f.name + ".dst")).string(), emit_instance(f));
    }
    write_text_file((dir / "notes.txt").string(), "ignored");
    const std::vector<std::string> paths = collect_instance_paths(dir.string());
    CHECK(paths.size() == 6);
    CHECK(std::is_sorted(paths.begin(), paths.end()));
    BenchOptions opts;
    opts.threads = 3;
    opts.timing = false;
    const std::vector<RunRecord> par = run_bench(paths, opts);
    opts.threads = 1;
    const std::vector<RunRecord> seq = run_bench(paths, opts);
    CHECK(records_to_csv(par, false) == records_to_csv(seq, false));
    CHECK(summarize(par).bound_violations == 0);
    CHECK_THROWS_AS(collect_instance_paths((dir / "missing").string()), Error);
    fs::remove_all(dir);
}

TEST_CASE("svg drawing") {
    const InstanceFile f = fixture::generated(2, 16, 3, 1);
    const std::vector<EdgeId> hl{0, 1};
    const std::string svg = render_svg(f, hl);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("#d62728") != std::string::npos);
    std::size_t lines = 0;
    for (std::size_t at = svg.find("<line"); at != std::string::npos; at = svg.find("<line", at + 1)) ++lines;
    CHECK(lines == f.instance.graph.edge_count());
    const InstanceFile bare = parse_instance(kMinimal);
    CHECK(render_svg(bare).find("<circle") != std::string::npos);
}

TEST_CASE("rationals and error codes") {
    CHECK(parse_rational("1/2") == Rational{1, 2});
    CHECK(parse_rational("0.25") == Rational{1, 4});
    CHECK(parse_rational("3") == Rational{3, 1});
    CHECK(parse_rational("4/6") == Rational{2, 3});
    CHECK_THROWS_AS(parse_rational("0"), Error);
    CHECK_THROWS_AS(parse_rational("-1/2"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(to_string(Rational{1, 2}) == "1/2");
    CHECK(to_string(ErrorCode::NotPlanarEmbedding) == "NotPlanarEmbedding");
    CHECK(exit_status(ErrorCode::MalformedRotation) >= 2);
    CHECK(exit_status(ErrorCode::IoError) != exit_status(ErrorCode::Infeasible));
}

}
