#include "dstkit/types.hpp"

#include <charconv>
#include <numeric>

namespace dstkit {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::MalformedRotation: return "MalformedRotation";
    case ErrorCode::MalformedGraph: return "MalformedGraph";
    case ErrorCode::NotPlanarEmbedding: return "NotPlanarEmbedding";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NotConnectedSubset: return "NotConnectedSubset";
    case ErrorCode::LabelCollision: return "LabelCollision";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NotSpanningTree: return "NotSpanningTree";
    case ErrorCode::UnreachableVertex: return "UnreachableVertex";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NegativeCost: return "NegativeCost";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::RoleConflict: return "RoleConflict";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

int exit_status(ErrorCode code) { return 2 + static_cast<int>(code); }

Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Error {
        return Error(ErrorCode::InvalidEpsilon, "not a positive rational: '" + std::string(text) + "'");
    };
    auto parse_int = [&](std::string_view s) {
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v < 0) throw fail();
        return v;
    };
    Rational r;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        r.num = parse_int(text.substr(0, slash));
        r.den = parse_int(text.substr(slash + 1));
    } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const std::string_view frac = text.substr(dot + 1);
        if (frac.size() > 12) throw fail();
        const std::string_view whole = text.substr(0, dot);
        const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
        const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        if (w > (std::int64_t{1} << 40)) throw fail();
        r.num = w * scale + f;
        r.den = scale;
    } else {
        r.num = parse_int(text);
        r.den = 1;
    }
    if (r.num <= 0 || r.den <= 0) throw fail();
    const std::int64_t g = std::gcd(r.num, r.den);
    r.num /= g;
    r.den /= g;
    return r;
}

std::string to_string(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

} // namespace dstkit
