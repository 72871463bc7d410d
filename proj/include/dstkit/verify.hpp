#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dstkit/instance_io.hpp"

namespace dstkit {

struct VerifyResult {
    bool ok = false;
    bool feasible = false;
    Cost cost = 0; // edge costs plus node costs of entered Steiner vertices
    std::vector<VertexId> unreached_terminals;
    ErrorCode code = ErrorCode::Infeasible; // meaningful when !ok
    std::string message;
};

/// Checks an edge list against an instance file: ids valid and distinct,
/// every terminal reachable from some root, and (when given) the claimed cost
/// equal to the recomputed one.
VerifyResult verify_solution(const InstanceFile& file, std::span<const EdgeId> edges,
                             std::optional<Cost> claimed_cost = std::nullopt);

} // namespace dstkit
