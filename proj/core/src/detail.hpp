#pragma once

#include <minimax/errors.hpp>
#include <minimax/types.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace minimax::detail {

/// ceil(x) clamped to [1, 2^62]; NaN is rejected. Values within 1e-12 (relative) above
/// an integer are treated as that integer so roundoff cannot add an iteration.
inline std::uint64_t ceil_count(double x) {
    if (std::isnan(x))
        throw NumericError("iteration count evaluated to NaN");
    constexpr double cap = 4611686018427387904.0; // 2^62
    if (x >= cap)
        return static_cast<std::uint64_t>(cap);
    const double c = std::ceil(x - 1e-12 * std::abs(x));
    return c < 1.0 ? 1 : static_cast<std::uint64_t>(c);
}

inline void require_finite(const Vector &v, const std::string &what, std::size_t iteration) {
    if (!v.allFinite())
        throw NumericError(what + " became non-finite", iteration);
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t elapsed_ns() const {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                                    start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace minimax::detail
