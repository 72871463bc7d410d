#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dstkit {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Cost = std::int64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

enum class ErrorCode {
    MalformedRotation,
    MalformedGraph,
    NotPlanarEmbedding,
    UnknownVertex,
    NotConnectedSubset,
    LabelCollision,
    NotConnected,
    NotSpanningTree,
    UnreachableVertex,
    Infeasible,
    InvalidEpsilon,
    InvalidInstance,
    CapExceeded,
    NegativeCost,
    SyntaxError,
    RoleConflict,
    InvalidParams,
    IoError,
};

std::string_view to_string(ErrorCode code);

/// Process exit status used by the CLI for a given error code (always >= 2).
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Positive rational p/q, used for epsilon.
struct Rational {
    std::int64_t num = 1;
    std::int64_t den = 2;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Parses "1/2", "0.25" or "3". Throws InvalidEpsilon when not a positive rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

} // namespace dstkit
