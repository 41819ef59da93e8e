#pragma once

#include <algorithm>
#include <cmath>

namespace logsum {

inline constexpr double default_tolerance = 1e-9;

/// Outcome of a scalar inequality check. `gap` is oriented so that the
/// claimed inequality reads gap >= 0.
struct InequalityVerdict {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double tolerance = default_tolerance;
    bool holds = true;

    [[nodiscard]] double scale() const noexcept { return std::max({1.0, std::abs(lhs), std::abs(rhs)}); }
    /// gap / scale, comparable across instances of different magnitude.
    [[nodiscard]] double relative_gap() const noexcept { return gap / scale(); }
};

/// Claim lhs >= rhs.
inline InequalityVerdict verdict_geq(double lhs, double rhs, double tol = default_tolerance) {
    InequalityVerdict v{lhs, rhs, lhs - rhs, tol, true};
    v.holds = v.gap >= -tol * v.scale();
    return v;
}

/// Claim lhs <= rhs.
inline InequalityVerdict verdict_leq(double lhs, double rhs, double tol = default_tolerance) {
    InequalityVerdict v{lhs, rhs, rhs - lhs, tol, true};
    v.holds = v.gap >= -tol * v.scale();
    return v;
}

} // namespace logsum
