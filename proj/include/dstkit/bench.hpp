#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dstkit/dst_solver.hpp"
#include "dstkit/exact_oracle.hpp"
#include "dstkit/instance_io.hpp"

namespace dstkit {

/// Solver output for an instance file, node costs included.
struct PipelineResult {
    std::vector<EdgeId> edges; // ids of the file's graph, ascending
    Cost cost = 0;             // edge plus node costs
    SolveReport report;        // for the (possibly reduced) edge-weighted instance
};

PipelineResult solve_file(const InstanceFile& file, const SolveOptions& options);

/// Oracle optimum for an instance file, node costs included. Throws CapExceeded.
PipelineResult exact_file(const InstanceFile& file, std::size_t cap);

struct RunRecord {
    std::string instance;
    std::uint64_t seed = 0;
    Rational epsilon;
    std::size_t k = 0;
    std::size_t roots = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    Cost approx_cost = 0;
    std::optional<Cost> oracle_cost;
    std::optional<double> ratio;
    std::uint64_t recursion_calls = 0;
    unsigned ell = 0;
    unsigned o = 0;
    double wall_ms = 0;

    bool bound_ok = true;   // approx within the guarantee (when the oracle ran)
    bool budget_ok = true;  // recursion_calls <= k * 2^(2l + o)
    std::string error;      // non-empty when the run failed
    ErrorCode error_code = ErrorCode::InvalidInstance;
};

struct BenchOptions {
    Rational epsilon;
    bool prune = false;
    std::size_t oracle_cap = kDefaultOracleCap;
    bool timing = true;
    std::size_t threads = 0; // 0: from DSTKIT_THREADS or the hardware
};

/// Worker count: DSTKIT_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t default_worker_count();

/// Solves (and, within the cap, runs the oracle on) one instance. Errors are
/// caught into the record. The solver output is stored in `result` if given.
RunRecord run_instance(const InstanceFile& file, const BenchOptions& options,
                       PipelineResult* result = nullptr);

/// Runs every instance file on a worker pool; records keep input order.
std::vector<RunRecord> run_bench(const std::vector<std::string>& paths, const BenchOptions& options);

struct BenchSummary {
    std::size_t runs = 0;
    std::size_t with_oracle = 0;
    double max_ratio = 0;
    double mean_ratio = 0;
    std::size_t bound_violations = 0;
    std::size_t budget_violations = 0;
    std::size_t failures = 0;
};

BenchSummary summarize(const std::vector<RunRecord>& records);
std::string format_summary(const BenchSummary& s);

std::string records_to_csv(const std::vector<RunRecord>& records, bool timing = true);
std::string records_to_json(const std::vector<RunRecord>& records, bool timing = true);

/// Instance files (*.dst) in a directory, sorted by name; a file path is
/// returned as is.
std::vector<std::string> collect_instance_paths(const std::string& path);

} // namespace dstkit
