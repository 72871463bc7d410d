// dstkit command-line front end: solve, exact, verify, gen, bench, draw.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dstkit/bench.hpp"
#include "dstkit/generator.hpp"
#include "dstkit/svg.hpp"
#include "dstkit/verify.hpp"

namespace {

using namespace dstkit;

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        write_text_file(out_path, text);
    }
}

std::string format_records(const std::vector<RunRecord>& records, const std::string& format, bool timing) {
    if (format == "json") return records_to_json(records, timing);
    return records_to_csv(records, timing);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Directed Steiner tree toolkit for embedded planar digraphs"};
    app.require_subcommand(1);

    std::string epsilon_text = "1/2";
    std::string out_path;
    std::string format = "csv";
    std::size_t oracle_cap = kDefaultOracleCap;
    int fixed_point = -1;
    bool prune_flag = false;
    bool no_timing = false;

    std::string instance_path;
    std::string record_path;
    auto* solve_cmd = app.add_subcommand("solve", "approximate a directed Steiner tree");
    solve_cmd->add_option("instance", instance_path, "instance file")->required();
    solve_cmd->add_option("--epsilon", epsilon_text, "cost-scaling accuracy, a positive rational");
    solve_cmd->add_flag("--prune", prune_flag, "drop redundant edges after solving");
    solve_cmd->add_option("--out", out_path, "solution file (default: stdout)");
    solve_cmd->add_option("--record", record_path, "write the run record here (default: stderr)");
    solve_cmd->add_option("--format", format, "run record format")->check(CLI::IsMember({"csv", "json"}));
    solve_cmd->add_option("--oracle-cap", oracle_cap, "compare with the exact optimum up to this many terminals");
    solve_cmd->add_option("--fixed-point", fixed_point, "read decimal costs scaled by 10^p");
    solve_cmd->add_flag("--no-timing", no_timing, "report zero wall time");

    auto* exact_cmd = app.add_subcommand("exact", "optimal solution by terminal-subset dynamic programming");
    exact_cmd->add_option("instance", instance_path, "instance file")->required();
    exact_cmd->add_option("--oracle-cap", oracle_cap, "largest terminal count accepted");
    exact_cmd->add_option("--out", out_path, "solution file (default: stdout)");
    exact_cmd->add_option("--fixed-point", fixed_point, "read decimal costs scaled by 10^p");

    std::string solution_path;
    auto* verify_cmd = app.add_subcommand("verify", "check a solution file against an instance");
    verify_cmd->add_option("instance", instance_path, "instance file")->required();
    verify_cmd->add_option("solution", solution_path, "solution file")->required();
    verify_cmd->add_option("--fixed-point", fixed_point, "read decimal costs scaled by 10^p");

    GeneratorParams gen;
    std::string style = "grid-diagonals";
    std::size_t count = 1;
    std::string dir;
    auto* gen_cmd = app.add_subcommand("gen", "generate random grid instances");
    gen_cmd->add_option("--seed", gen.seed, "random seed (first seed for a corpus)");
    gen_cmd->add_option("--n", gen.n, "vertex count");
    gen_cmd->add_option("--k", gen.k, "terminal count");
    gen_cmd->add_option("--roots", gen.roots, "root count");
    gen_cmd->add_option("--cost-min", gen.cost_min, "smallest edge cost");
    gen_cmd->add_option("--cost-max", gen.cost_max, "largest edge cost");
    gen_cmd->add_option("--style", style, "grid or grid-diagonals")->check(CLI::IsMember({"grid", "grid-diagonals"}));
    gen_cmd->add_option("--count", count, "number of instances, seeds counting up");
    gen_cmd->add_option("--dir", dir, "write <name>.dst files into this directory");
    gen_cmd->add_option("--out", out_path, "single instance output (default: stdout)");

    std::vector<std::string> bench_inputs;
    auto* bench_cmd = app.add_subcommand("bench", "solve a corpus and compare with the exact optimum");
    bench_cmd->add_option("inputs", bench_inputs, "instance files or directories of *.dst files")->required();
    bench_cmd->add_option("--epsilon", epsilon_text, "cost-scaling accuracy, a positive rational");
    bench_cmd->add_flag("--prune", prune_flag, "drop redundant edges after solving");
    bench_cmd->add_option("--oracle-cap", oracle_cap, "largest terminal count given to the exact oracle");
    bench_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    bench_cmd->add_option("--out", out_path, "records file (default: stdout)");
    bench_cmd->add_flag("--no-timing", no_timing, "report zero wall time");

    std::string draw_solution;
    auto* draw_cmd = app.add_subcommand("draw", "render an instance as SVG");
    draw_cmd->add_option("instance", instance_path, "instance file")->required();
    draw_cmd->add_option("--solution", draw_solution, "solution file to highlight");
    draw_cmd->add_option("--out", out_path, "SVG file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd) {
            const InstanceFile file = load_instance(instance_path, fixed_point);
            BenchOptions opts;
            opts.epsilon = parse_rational(epsilon_text);
            opts.prune = prune_flag;
            opts.oracle_cap = oracle_cap;
            opts.timing = !no_timing;
            PipelineResult res;
            const RunRecord rec = run_instance(file, opts, &res);
            if (!rec.error.empty()) throw Error(rec.error_code, rec.error.substr(rec.error.find(": ") + 2));
            emit(out_path, emit_solution(file.name, res.edges, res.cost));
            const std::string text = format_records({rec}, format, opts.timing);
            if (record_path.empty()) {
                std::cerr << text;
            } else {
                write_text_file(record_path, text);
            }
        } else if (*exact_cmd) {
            const InstanceFile file = load_instance(instance_path, fixed_point);
            const PipelineResult res = exact_file(file, oracle_cap);
            emit(out_path, emit_solution(file.name, res.edges, res.cost));
        } else if (*verify_cmd) {
            const InstanceFile file = load_instance(instance_path, fixed_point);
            const SolutionFile sol = parse_solution(read_text_file(solution_path));
            const VerifyResult res = verify_solution(file, sol.edges, sol.cost);
            if (!res.ok) throw Error(res.code, res.message);
            std::cout << "ok: " << sol.edges.size() << " edges, cost " << res.cost << "\n";
        } else if (*gen_cmd) {
            gen.style = parse_grid_style(style);
            if (count > 1 && dir.empty()) throw Error(ErrorCode::InvalidParams, "--count needs --dir");
            const std::uint64_t first_seed = gen.seed;
            for (std::size_t i = 0; i < count; ++i) {
                gen.seed = first_seed + i;
                const InstanceFile file = generate_instance(gen);
                const std::string text = emit_instance(file);
                if (!dir.empty()) {
                    std::filesystem::create_directories(dir);
                    write_text_file((std::filesystem::path(dir) / (file.name + ".dst")).string(), text);
                } else {
                    emit(out_path, text);
                }
            }
        } else if (*bench_cmd) {
            BenchOptions opts;
            opts.epsilon = parse_rational(epsilon_text);
            opts.prune = prune_flag;
            opts.oracle_cap = oracle_cap;
            opts.timing = !no_timing;
            std::vector<std::string> paths;
            for (const std::string& in : bench_inputs) {
                for (std::string& p : collect_instance_paths(in)) paths.push_back(std::move(p));
            }
            const std::vector<RunRecord> records = run_bench(paths, opts);
            emit(out_path, format_records(records, format, opts.timing));
            const BenchSummary summary = summarize(records);
            std::cerr << format_summary(summary) << "\n";
            if (summary.bound_violations + summary.budget_violations + summary.failures > 0) return 1;
        } else if (*draw_cmd) {
            const InstanceFile file = load_instance(instance_path);
            std::vector<EdgeId> highlight;
            if (!draw_solution.empty()) highlight = parse_solution(read_text_file(draw_solution)).edges;
            emit(out_path, render_svg(file, highlight));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_status(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
