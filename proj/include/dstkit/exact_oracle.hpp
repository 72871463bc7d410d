#pragma once

#include <cstddef>

#include "dstkit/instance.hpp"

namespace dstkit {

inline constexpr std::size_t kDefaultOracleCap = 12;
inline constexpr std::size_t kBruteForceEdgeCap = 18;

/// Optimal solution by subset dynamic programming over terminals:
/// split at a vertex, then relax along reverse shortest paths. Several roots
/// hang off a virtual super-source. Throws Infeasible and CapExceeded (k > cap).
Solution exact_dst(const Instance& inst, std::size_t cap = kDefaultOracleCap);

/// Optimal solution by enumerating edge subsets. Ties go to the subset with
/// the smallest bitmask. Throws Infeasible and CapExceeded (|E| > 18).
Solution brute_force_dst(const Instance& inst);

struct RatioRecord {
    std::size_t k = 0;
    std::size_t roots = 0;
    std::size_t n = 0;
    Cost opt = 0;
    Cost approx = 0;
    double ratio = 1.0;      // approx / opt, 1 when both are 0
    double bound = 0.0;      // theoretical factor including (1 + eps)
    bool satisfied = false;  // approx <= bound * opt, exact rational comparison
};

/// Integer part of the guarantee: 6l+1 for one root, 8(R+l)+1 otherwise,
/// with l = ceil(log2 k). The full bound multiplies this by (1 + eps).
std::int64_t guarantee_factor(std::size_t k, std::size_t roots);

/// approx <= factor * (1 + eps) * opt, compared exactly.
bool within_bound(Cost approx, Cost opt, std::int64_t factor, Rational epsilon);

/// Compares a solution with the oracle optimum. Throws CapExceeded.
RatioRecord ratio_report(const Instance& inst, const Solution& approx, Rational epsilon,
                         std::size_t cap = kDefaultOracleCap);

} // namespace dstkit
