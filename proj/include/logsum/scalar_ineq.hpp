#pragma once

// Scalar generalized log-sum inequalities:
//
//   forward:  sum g(a_i) f(g(a_i)/g(b_i)) >= (sum g(a_i)) f(sum g(a_i) / sum g(b_i))
//             when x f(x) is convex on the ratio interval,
//   reverse:  sum g(a_i) f(g(b_i)/g(a_i)) <= (sum g(a_i)) f(sum g(b_i) / sum g(a_i))
//             when x f(1/x) is concave on the ratio interval,
//
// plus the q-log and rational instances built on them.

#include "logsum/deformed_log.hpp"
#include "logsum/errors.hpp"
#include "logsum/function_spec.hpp"
#include "logsum/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace logsum {

struct SequencePair {
    std::vector<double> a;
    std::vector<double> b;

    SequencePair() = default;
    SequencePair(std::vector<double> a_, std::vector<double> b_) : a(std::move(a_)), b(std::move(b_)) { validate(); }

    void validate() const {
        if (a.empty() || a.size() != b.size())
            throw dimension_error("SequencePair: sequences must be non-empty and of equal length");
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!std::isfinite(a[i]) || !std::isfinite(b[i]))
                throw domain_error("SequencePair: entries must be finite");
    }

    [[nodiscard]] std::size_t size() const noexcept { return a.size(); }
};

/// Bounds of the ratio set {g(a_i) / g(b_i)}.
struct RatioBounds {
    double lower = 0.0;
    double upper = 0.0;

    [[nodiscard]] bool degenerate() const noexcept {
        return upper - lower <= 1e-12 * std::max({1.0, std::abs(lower), std::abs(upper)});
    }
};

enum class CurvatureKind {
    xfx,      ///< h(x) = x f(x), required convex
    xf1overx, ///< h(x) = x f(1/x), required concave
};

inline constexpr int precondition_grid_points = 101;

namespace detail {

struct MappedPair {
    std::vector<double> ga;
    std::vector<double> gb;
};

inline MappedPair map_pair(const FunctionSpec& g, const SequencePair& pair) {
    pair.validate();
    MappedPair out;
    out.ga.reserve(pair.size());
    out.gb.reserve(pair.size());
    for (std::size_t i = 0; i < pair.size(); ++i) {
        out.ga.push_back(g(pair.a[i]));
        out.gb.push_back(g(pair.b[i]));
    }
    return out;
}

inline void require_positive_all(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!(values[i] > 0.0))
            throw precondition_error(std::string(what) + " must be positive for every index (index " +
                                     std::to_string(i) + " gives " + std::to_string(values[i]) + ")");
}

inline RatioBounds bounds_of(std::span<const double> num, std::span<const double> den) {
    RatioBounds rb{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < num.size(); ++i) {
        const double r = num[i] / den[i];
        rb.lower = std::min(rb.lower, r);
        rb.upper = std::max(rb.upper, r);
    }
    return rb;
}

inline double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// weight * f(ratio), taking 0 * f(.) = 0 when the weight vanishes and x f(x) -> 0.
inline double weighted(const FunctionSpec& f, double weight, double ratio) {
    if (weight == 0.0 && f.vanishes_times_zero())
        return 0.0;
    return weight * f(ratio);
}

} // namespace detail

inline RatioBounds ratio_bounds(const FunctionSpec& g, const SequencePair& pair) {
    const auto mapped = detail::map_pair(g, pair);
    detail::require_positive_all(mapped.gb, "g(b_i)");
    return detail::bounds_of(mapped.ga, mapped.gb);
}

/// Checks convexity of x f(x) (xfx) or concavity of x f(1/x) (xf1overx) on a
/// uniform grid through second divided differences. The threshold is 1e-9
/// plus the round-off floor of the difference stencil.
inline bool convexity_check(CurvatureKind kind, const FunctionSpec& f, double lo, double hi, int grid_points) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
        throw precondition_error("convexity_check: interval must be finite and non-degenerate");
    if (grid_points < 3)
        throw precondition_error("convexity_check: need at least 3 grid points");

    auto h = [&](double x) {
        if (kind == CurvatureKind::xfx) {
            if (!f.in_domain(x) && !(x == 0.0 && f.vanishes_times_zero()))
                throw domain_error("convexity_check: x = " + std::to_string(x) + " outside the domain of " + f.name());
            return f.x_times(x);
        }
        if (x == 0.0 || !f.in_domain(1.0 / x))
            throw domain_error("convexity_check: 1/x at x = " + std::to_string(x) + " outside the domain of " + f.name());
        return x * f(1.0 / x);
    };

    const auto n = static_cast<std::size_t>(grid_points);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k)
        values[k] = h(k + 1 == n ? hi : lo + step * static_cast<double>(k));

    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double step2 = step * step;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double second = (values[k - 1] - 2.0 * values[k] + values[k + 1]) / step2;
        const double magnitude = std::max({std::abs(values[k - 1]), std::abs(values[k]), std::abs(values[k + 1])});
        const double slack = 1e-9 + 8.0 * eps * magnitude / step2;
        if (kind == CurvatureKind::xfx ? second < -slack : second > slack)
            return false;
    }
    return true;
}

namespace detail {

inline void require_curvature(CurvatureKind kind, const FunctionSpec& f, const RatioBounds& rb) {
    if (rb.degenerate())
        return;
    if (!convexity_check(kind, f, rb.lower, rb.upper, precondition_grid_points)) {
        const char* what = kind == CurvatureKind::xfx ? "x f(x) is not convex" : "x f(1/x) is not concave";
        throw precondition_error(std::string(what) + " on the ratio interval [" + std::to_string(rb.lower) + ", " +
                                 std::to_string(rb.upper) + "] for f = " + f.name());
    }
}

} // namespace detail

/// Forward inequality; gap = lhs - rhs. Only g(b_i) > 0 is required, g(a_i)
/// may take any sign as long as the ratios stay inside the domain of f.
inline InequalityVerdict generalized_log_sum_gap(const FunctionSpec& f, const FunctionSpec& g, const SequencePair& pair,
                                                 double tol = default_tolerance) {
    const auto mapped = detail::map_pair(g, pair);
    detail::require_positive_all(mapped.gb, "g(b_i)");
    const auto rb = detail::bounds_of(mapped.ga, mapped.gb);
    detail::require_curvature(CurvatureKind::xfx, f, rb);

    double lhs = 0.0;
    for (std::size_t i = 0; i < mapped.ga.size(); ++i)
        lhs += detail::weighted(f, mapped.ga[i], mapped.ga[i] / mapped.gb[i]);
    const double sa = detail::sum(mapped.ga);
    const double sb = detail::sum(mapped.gb);
    const double rhs = detail::weighted(f, sa, sa / sb);
    return verdict_geq(lhs, rhs, tol);
}

/// Reverse inequality; gap = rhs - lhs. Requires g(a_i) > 0 and g(b_i) > 0
/// (the latter are the Jensen weights).
inline InequalityVerdict reverse_log_sum_gap(const FunctionSpec& f, const FunctionSpec& g, const SequencePair& pair,
                                             double tol = default_tolerance) {
    const auto mapped = detail::map_pair(g, pair);
    detail::require_positive_all(mapped.ga, "g(a_i)");
    detail::require_positive_all(mapped.gb, "g(b_i)");
    const auto rb = detail::bounds_of(mapped.ga, mapped.gb);
    detail::require_curvature(CurvatureKind::xf1overx, f, rb);

    double lhs = 0.0;
    for (std::size_t i = 0; i < mapped.ga.size(); ++i)
        lhs += mapped.ga[i] * f(mapped.gb[i] / mapped.ga[i]);
    const double sa = detail::sum(mapped.ga);
    const double sb = detail::sum(mapped.gb);
    const double rhs = sa * f(sb / sa);
    return verdict_leq(lhs, rhs, tol);
}

/// Lower end of the region where x^2 / (1 + 2 x^2) is concave.
inline const double rational_concavity_threshold = 1.0 / std::sqrt(6.0);

/// sum a_i^2 b_i / (2 a_i^2 + b_i^2) <= A^2 B / (2 A^2 + B^2). The ratio
/// domain a_i / b_i >= 1/sqrt(6) is enforced directly.
inline InequalityVerdict rational_example_gap(const SequencePair& pair, double tol = default_tolerance) {
    pair.validate();
    detail::require_positive_all(pair.a, "a_i");
    detail::require_positive_all(pair.b, "b_i");
    const auto rb = detail::bounds_of(pair.a, pair.b);
    if (rb.lower < rational_concavity_threshold)
        throw precondition_error("rational_example_gap: min a_i/b_i = " + std::to_string(rb.lower) +
                                 " leaves the concavity region [1/sqrt(6), inf)");
    double lhs = 0.0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        const double a2 = pair.a[i] * pair.a[i];
        lhs += a2 * pair.b[i] / (2.0 * a2 + pair.b[i] * pair.b[i]);
    }
    const double sa = detail::sum(pair.a);
    const double sb = detail::sum(pair.b);
    const double rhs = sa * sa * sb / (2.0 * sa * sa + sb * sb);
    return verdict_leq(lhs, rhs, tol);
}

/// (sum b^r)^(1-q) sum a^r ln_q(a^r/b^r)  vs  (sum a^r)(ln_q(sum a^r) - ln_q(sum b^r)).
/// The claim is >= for q < 2 and <= for q > 2; the gap is oriented accordingly.
inline InequalityVerdict q_log_sum_gap(const SequencePair& pair, double q, double r, double tol = default_tolerance) {
    if (std::abs(q - 2.0) <= 1e-12)
        throw precondition_error("q_log_sum_gap: q = 2 has no inequality direction");
    const QLogParams params{q};
    const auto mapped = detail::map_pair(FunctionSpec::power(r), pair);
    detail::require_positive_all(mapped.gb, "b_i^r");
    for (double v : mapped.ga) {
        if (v < 0.0)
            throw precondition_error("q_log_sum_gap: a_i^r must be non-negative");
        if (v == 0.0 && q > 2.0)
            throw precondition_error("q_log_sum_gap: zero a_i^r has no finite contribution for q > 2");
    }

    const double sa = detail::sum(mapped.ga);
    const double sb = detail::sum(mapped.gb);
    if (!(sa > 0.0))
        throw precondition_error("q_log_sum_gap: sum of a_i^r must be positive");

    double inner = 0.0;
    for (std::size_t i = 0; i < mapped.ga.size(); ++i)
        if (mapped.ga[i] != 0.0)
            inner += mapped.ga[i] * q_log(mapped.ga[i] / mapped.gb[i], params);
    const double lhs = detail::deformed_power(sb, params) * inner;
    const double rhs = sa * (q_log(sa, params) - q_log(sb, params));
    return q < 2.0 ? verdict_geq(lhs, rhs, tol) : verdict_leq(lhs, rhs, tol);
}

} // namespace logsum
