#pragma once

// q-deformed logarithm ln_q(x) = (x^(1-q) - 1) / (1 - q) and its algebraic
// identities. Inside a small window around q = 1 every routine switches to
// the natural-log limit, so the identities stay exact there as well.

#include "logsum/errors.hpp"

#include <cmath>
#include <string>

namespace logsum {

struct QLogParams {
    double q = 0.5;
    double limit_window = 1e-6;

    QLogParams() = default;
    QLogParams(double q_, double window = 1e-6) : q(q_), limit_window(window) { validate(); }

    void validate() const {
        if (!std::isfinite(q))
            throw domain_error("q-log: deformation parameter q must be finite");
        if (!(limit_window > 0.0 && limit_window <= 1e-6))
            throw domain_error("q-log: limit_window must lie in (0, 1e-6]");
    }

    /// True when the natural-log limit is used.
    [[nodiscard]] bool in_limit() const noexcept { return std::abs(q - 1.0) <= limit_window; }

    /// 1 - q, or exactly 0 inside the limit window.
    [[nodiscard]] double one_minus_q() const noexcept { return in_limit() ? 0.0 : 1.0 - q; }
};

namespace detail {

inline void require_positive(double x, const char* what) {
    if (!std::isfinite(x))
        throw domain_error(std::string(what) + ": argument must be finite");
    if (!(x > 0.0))
        throw domain_error(std::string(what) + ": argument must be positive, got " + std::to_string(x));
}

// x^(1-q), evaluated as exp((1-q) ln x).
inline double deformed_power(double x, const QLogParams& p) {
    const double s = p.one_minus_q();
    return s == 0.0 ? 1.0 : std::exp(s * std::log(x));
}

} // namespace detail

/// ln_q(x). expm1 keeps full precision just outside the limit window.
inline double q_log(double x, const QLogParams& params) {
    params.validate();
    detail::require_positive(x, "q_log");
    const double lx = std::log(x);
    const double s = params.one_minus_q();
    double result = s == 0.0 ? lx : std::expm1(s * lx) / s;
    if (!std::isfinite(result))
        throw domain_error("q_log: result overflows for x = " + std::to_string(x) + ", q = " + std::to_string(params.q));
    return result;
}

inline double q_log(double x, double q) { return q_log(x, QLogParams{q}); }

/// ln_q(x) + ln_q(y) + (1-q) ln_q(x) ln_q(y); equals ln_q(x y).
inline double q_log_product(double x, double y, const QLogParams& params) {
    detail::require_positive(x, "q_log_product");
    detail::require_positive(y, "q_log_product");
    const double lx = q_log(x, params);
    const double ly = q_log(y, params);
    return lx + ly + params.one_minus_q() * lx * ly;
}

/// Second product form x^(1-q) ln_q(y) + ln_q(x); also equals ln_q(x y).
inline double q_log_product_alt(double x, double y, const QLogParams& params) {
    detail::require_positive(x, "q_log_product_alt");
    detail::require_positive(y, "q_log_product_alt");
    return detail::deformed_power(x, params) * q_log(y, params) + q_log(x, params);
}

/// (ln_q(x) - ln_q(y)) / y^(1-q); equals ln_q(x / y).
inline double q_log_quotient(double x, double y, const QLogParams& params) {
    detail::require_positive(x, "q_log_quotient");
    detail::require_positive(y, "q_log_quotient");
    return (q_log(x, params) - q_log(y, params)) / detail::deformed_power(y, params);
}

/// -ln_q(y) / y^(1-q); equals ln_q(1 / y).
inline double q_log_reciprocal(double y, const QLogParams& params) {
    detail::require_positive(y, "q_log_reciprocal");
    return -q_log(y, params) / detail::deformed_power(y, params);
}

/// 1 + (1-q) ln_q(x); equals x^(1-q).
inline double q_log_pseudo_power(double x, const QLogParams& params) {
    return 1.0 + params.one_minus_q() * q_log(x, params);
}

} // namespace logsum
