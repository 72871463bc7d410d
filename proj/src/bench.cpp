#include "dstkit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace dstkit {
namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fixed(double v, int digits) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(digits);
    out << v;
    return out.str();
}

} // namespace

PipelineResult solve_file(const InstanceFile& file, const SolveOptions& options) {
    PipelineResult out;
    if (!file.has_node_costs()) {
        out.report = solve(file.instance, options);
        out.edges = out.report.solution.edges;
        out.cost = out.report.solution.cost;
        return out;
    }
    const NodeWeightedReduction red = node_weighted_reduction(file.instance, file.node_costs);
    out.report = solve(red.instance, options);
    out.edges = lift_node_weighted(red, out.report.solution.edges);
    out.cost = node_weighted_cost(file.instance, file.node_costs, out.edges);
    return out;
}

PipelineResult exact_file(const InstanceFile& file, std::size_t cap) {
    PipelineResult out;
    if (!file.has_node_costs()) {
        out.report.solution = exact_dst(file.instance, cap);
        out.edges = out.report.solution.edges;
        out.cost = out.report.solution.cost;
        return out;
    }
    const NodeWeightedReduction red = node_weighted_reduction(file.instance, file.node_costs);
    out.report.solution = exact_dst(red.instance, cap);
    out.edges = lift_node_weighted(red, out.report.solution.edges);
    out.cost = node_weighted_cost(file.instance, file.node_costs, out.edges);
    return out;
}

std::size_t default_worker_count() {
    if (const char* env = std::getenv("DSTKIT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

RunRecord run_instance(const InstanceFile& file, const BenchOptions& options, PipelineResult* result) {
    RunRecord rec;
    rec.instance = file.name;
    rec.seed = file.seed;
    rec.epsilon = options.epsilon;
    rec.k = file.instance.k();
    rec.roots = file.instance.roots.size();
    rec.n = file.instance.graph.vertex_count();
    rec.m = file.instance.graph.edge_count();
    try {
        const auto start = std::chrono::steady_clock::now();
        const PipelineResult res = solve_file(file, SolveOptions{options.epsilon, options.prune, false, false});
        const auto stop = std::chrono::steady_clock::now();
        if (options.timing) rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        rec.approx_cost = res.cost;
        rec.recursion_calls = res.report.recursion_calls;
        rec.ell = res.report.ell;
        rec.o = res.report.o;
        rec.budget_ok = rec.recursion_calls <= RecursionBudget::call_bound(rec.k, rec.ell, rec.o);
        if (rec.k <= options.oracle_cap) {
            const PipelineResult opt = exact_file(file, options.oracle_cap);
            rec.oracle_cost = opt.cost;
            if (opt.cost > 0) {
                rec.ratio = static_cast<double>(res.cost) / static_cast<double>(opt.cost);
            } else {
                rec.ratio = res.cost == 0 ? 1.0 : std::numeric_limits<double>::infinity();
            }
            rec.bound_ok = within_bound(res.cost, opt.cost, guarantee_factor(rec.k, rec.roots), options.epsilon);
        }
        if (result != nullptr) *result = res;
    } catch (const Error& e) {
        rec.error = std::string(to_string(e.code())) + ": " + e.what();
        rec.error_code = e.code();
    }
    return rec;
}

std::vector<RunRecord> run_bench(const std::vector<std::string>& paths, const BenchOptions& options) {
    std::vector<RunRecord> records(paths.size());
    const std::size_t workers =
        std::min(paths.size(), options.threads > 0 ? options.threads : default_worker_count());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < paths.size(); i = next++) {
            try {
                records[i] = run_instance(load_instance(paths[i]), options);
            } catch (const Error& e) {
                records[i].instance = paths[i];
                records[i].epsilon = options.epsilon;
                records[i].error = std::string(to_string(e.code())) + ": " + e.what();
                records[i].error_code = e.code();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    return records;
}

BenchSummary summarize(const std::vector<RunRecord>& records) {
    BenchSummary s;
    double sum = 0;
    for (const RunRecord& r : records) {
        ++s.runs;
        if (!r.error.empty()) {
            ++s.failures;
            continue;
        }
        if (!r.budget_ok) ++s.budget_violations;
        if (!r.ratio) continue;
        ++s.with_oracle;
        s.max_ratio = std::max(s.max_ratio, *r.ratio);
        sum += *r.ratio;
        if (!r.bound_ok) ++s.bound_violations;
    }
    if (s.with_oracle > 0) s.mean_ratio = sum / static_cast<double>(s.with_oracle);
    return s;
}

std::string format_summary(const BenchSummary& s) {
    std::ostringstream out;
    out << "runs: " << s.runs << ", with oracle: " << s.with_oracle << ", max ratio: " << fixed(s.max_ratio, 4)
        << ", mean ratio: " << fixed(s.mean_ratio, 4) << ", bound violations: " << s.bound_violations
        << ", budget violations: " << s.budget_violations << ", failures: " << s.failures;
    return out.str();
}

std::string records_to_csv(const std::vector<RunRecord>& records, bool timing) {
    std::ostringstream out;
    out << "instance,seed,epsilon,k,R,n,m,approx_cost,oracle_cost,ratio,recursion_calls,ell,o,wall_ms\n";
    for (const RunRecord& r : records) {
        out << csv_field(r.instance) << ',' << r.seed << ',' << to_string(r.epsilon) << ',' << r.k << ','
            << r.roots << ',' << r.n << ',' << r.m << ',';
        if (r.error.empty()) {
            out << r.approx_cost << ',' << (r.oracle_cost ? std::to_string(*r.oracle_cost) : "") << ','
                << (r.ratio ? fixed(*r.ratio, 6) : "") << ',' << r.recursion_calls << ',' << r.ell << ','
                << r.o << ',' << (timing ? fixed(r.wall_ms, 3) : "0");
        } else {
            out << csv_field("error: " + r.error) << ",,,,,,";
        }
        out << '\n';
    }
    return out.str();
}

std::string records_to_json(const std::vector<RunRecord>& records, bool timing) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const RunRecord& r : records) {
        nlohmann::ordered_json j;
        j["instance"] = r.instance;
        j["seed"] = r.seed;
        j["epsilon"] = to_string(r.epsilon);
        j["k"] = r.k;
        j["R"] = r.roots;
        j["n"] = r.n;
        j["m"] = r.m;
        if (!r.error.empty()) {
            j["error"] = r.error;
            arr.push_back(std::move(j));
            continue;
        }
        j["approx_cost"] = r.approx_cost;
        j["oracle_cost"] = r.oracle_cost ? nlohmann::ordered_json(*r.oracle_cost) : nlohmann::ordered_json(nullptr);
        j["ratio"] = r.ratio ? nlohmann::ordered_json(*r.ratio) : nlohmann::ordered_json(nullptr);
        j["recursion_calls"] = r.recursion_calls;
        j["ell"] = r.ell;
        j["o"] = r.o;
        j["wall_ms"] = timing ? r.wall_ms : 0.0;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::vector<std::string> collect_instance_paths(const std::string& path) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(path, ec)) {
        if (!fs::exists(path, ec)) throw Error(ErrorCode::IoError, "no such file or directory '" + path + "'");
        return {path};
    }
    std::vector<std::string> out;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".dst") out.push_back(entry.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace dstkit
