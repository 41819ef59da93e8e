#pragma once

// Registered property suites. Each trial draws one instance from a generator
// keyed by the trial seed, evaluates one check, and returns a signed margin
// (relative gap or relative residual eigenvalue; negative means the claimed
// direction failed).

#include "logsum/deformed_log.hpp"
#include "logsum/harness/generators.hpp"
#include "logsum/harness/report.hpp"
#include "logsum/harness/rng.hpp"
#include "logsum/loewner_ineq.hpp"
#include "logsum/matfun.hpp"
#include "logsum/scalar_ineq.hpp"
#include "logsum/trace_ineq.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace logsum::harness {

struct TrialOutcome {
    double margin = 0.0;
    bool violated = false;
    bool oracle_mismatch = false;
    std::map<std::string, double> maxima;
    std::map<std::string, std::uint64_t> counters;
    std::string note;
};

using TrialFn = std::function<TrialOutcome(Rng&, const TrialConfig&)>;

struct SuiteDef {
    std::string name;
    std::vector<std::string> aliases;
    std::string summary;
    TrialFn trial;
};

inline constexpr int max_generation_attempts = 64;
inline constexpr std::size_t max_listed_findings = 200;

namespace detail {

inline Eigen::Index draw_dim(Rng& rng, const TrialConfig& cfg) {
    return cfg.exact_sizes ? cfg.dim : static_cast<Eigen::Index>(rng.integer(1, cfg.dim));
}

inline std::size_t draw_m(Rng& rng, const TrialConfig& cfg) {
    return cfg.exact_sizes ? static_cast<std::size_t>(cfg.family_size)
                           : static_cast<std::size_t>(rng.integer(1, cfg.family_size));
}

inline TrialOutcome from_verdict(const InequalityVerdict& v) {
    TrialOutcome o;
    o.margin = v.relative_gap();
    o.violated = !v.holds;
    return o;
}

inline TrialOutcome from_verdict(const LoewnerVerdict& v) {
    TrialOutcome o;
    o.margin = v.relative_margin();
    o.violated = !v.holds;
    return o;
}

inline void merge(TrialOutcome& into, const TrialOutcome& other) {
    into.margin = std::min(into.margin, other.margin);
    into.violated = into.violated || other.violated;
    into.oracle_mismatch = into.oracle_mismatch || other.oracle_mismatch;
}

inline double relative_difference(double x, double y) {
    return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
}

inline TrialOutcome from_trace(const TraceVerdict& tv, double tol) {
    auto o = from_verdict(tv.verdict);
    if (tv.matrix_path) {
        merge(o, from_verdict(*tv.matrix_path));
        o.maxima["path_difference"] = std::max(relative_difference(tv.verdict.lhs, tv.matrix_path->lhs),
                                               relative_difference(tv.verdict.rhs, tv.matrix_path->rhs));
        o.oracle_mismatch = !tv.paths_agree(tol);
    } else {
        o.counters["matrix_path_skipped"] = 1;
    }
    return o;
}

/// q uniform on [lo, hi] away from 2 by at least `gap`.
inline double draw_q_away_from_two(Rng& rng, double lo, double hi, double gap = 0.01) {
    for (;;) {
        const double q = rng.uniform(lo, hi);
        if (std::abs(q - 2.0) >= gap)
            return q;
    }
}

// --- scalar --------------------------------------------------------------

inline TrialOutcome scalar_log_sum(Rng& rng, const TrialConfig& cfg) {
    const auto pair = random_sequence_pair(rng, static_cast<std::size_t>(draw_dim(rng, cfg)));
    return from_verdict(generalized_log_sum_gap(FunctionSpec::log(), FunctionSpec::identity(), pair, cfg.tolerance));
}

inline TrialOutcome scalar_log_sum_equality(Rng& rng, const TrialConfig& cfg) {
    const auto n = static_cast<std::size_t>(draw_dim(rng, cfg));
    const auto b = uniform_values(rng, n, 0.0, 10.0);
    const double c = rng.uniform_open_closed(0.1, 10.0);
    std::vector<double> a(n);
    std::transform(b.begin(), b.end(), a.begin(), [c](double x) { return c * x; });
    const auto v = generalized_log_sum_gap(FunctionSpec::log(), FunctionSpec::identity(), SequencePair(a, b), cfg.tolerance);
    TrialOutcome o;
    o.margin = -std::abs(v.gap) / v.scale();
    o.violated = std::abs(v.gap) > cfg.tolerance * v.scale();
    return o;
}

inline FunctionSpec draw_xfx_convex(Rng& rng) {
    switch (rng.integer(0, 2)) {
    case 0:
        return FunctionSpec::log();
    case 1:
        return FunctionSpec::q_log(rng.uniform(0.0, 1.95));
    default:
        return FunctionSpec::power(rng.uniform(0.0, 3.0));
    }
}

inline FunctionSpec draw_positive_map(Rng& rng) {
    return rng.chance(0.5) ? FunctionSpec::identity() : FunctionSpec::power(rng.uniform_open_closed(0.0, 2.0));
}

inline TrialOutcome generalized_log_sum(Rng& rng, const TrialConfig& cfg) {
    const auto f = draw_xfx_convex(rng);
    const auto g = draw_positive_map(rng);
    const auto pair = random_sequence_pair(rng, static_cast<std::size_t>(draw_dim(rng, cfg)));
    return from_verdict(generalized_log_sum_gap(f, g, pair, cfg.tolerance));
}

inline TrialOutcome ratio_bounds_suite(Rng& rng, const TrialConfig& cfg) {
    const auto g = draw_positive_map(rng);
    const auto pair = random_sequence_pair(rng, static_cast<std::size_t>(draw_dim(rng, cfg)));
    const auto rb = ratio_bounds(g, pair);
    bool inside = true, lower_hit = false, upper_hit = false;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        const double r = g(pair.a[i]) / g(pair.b[i]);
        inside = inside && rb.lower <= r && r <= rb.upper;
        lower_hit = lower_hit || r == rb.lower;
        upper_hit = upper_hit || r == rb.upper;
    }
    TrialOutcome o;
    o.violated = !(inside && lower_hit && upper_hit);
    o.margin = o.violated ? -1.0 : 0.0;
    return o;
}

/// Functions with a known answer: curvature is strictly signed on the interval.
inline TrialOutcome convexity_check_suite(Rng& rng, const TrialConfig&) {
    double lo = rng.uniform(0.05, 1.0);
    const double width = rng.uniform(0.5, 5.0);
    const bool xfx = rng.chance(0.5);
    bool expected = true;
    FunctionSpec f = FunctionSpec::log(); // x log x convex, -x log x concave
    switch (rng.integer(0, 2)) {
    case 0:
        break;
    case 1:
        if (xfx) {
            expected = rng.chance(0.5); // x^(r+1)
            f = FunctionSpec::power(expected ? rng.uniform(0.2, 2.0) : rng.uniform(-0.8, -0.2));
        } else {
            expected = rng.chance(0.5); // x^(1-r)
            f = FunctionSpec::power(expected ? rng.uniform(0.0, 0.8) : rng.uniform(1.2, 2.0));
        }
        break;
    default:
        if (xfx) {
            f = FunctionSpec::q_log(rng.uniform(0.0, 1.9)); // (2 - q) x^-q > 0
        } else {
            // x^2 / (1 + 2 x^2): concave exactly on [1/sqrt(6), inf)
            f = FunctionSpec::rational();
            expected = rng.chance(0.5);
            lo = expected ? rng.uniform(0.45, 1.0) : rng.uniform(0.05, 0.2);
        }
    }
    const auto kind = xfx ? CurvatureKind::xfx : CurvatureKind::xf1overx;
    const bool got = convexity_check(kind, f, lo, lo + width, precondition_grid_points);
    TrialOutcome o;
    o.violated = got != expected;
    o.margin = o.violated ? -1.0 : 0.0;
    return o;
}

inline TrialOutcome reverse_log_sum(Rng& rng, const TrialConfig& cfg) {
    const auto f = rng.chance(0.5) ? FunctionSpec::log() : FunctionSpec::power(rng.uniform(0.0, 1.0));
    const auto g = draw_positive_map(rng);
    const auto pair = random_sequence_pair(rng, static_cast<std::size_t>(draw_dim(rng, cfg)), 0.01, 10.0);
    return from_verdict(reverse_log_sum_gap(f, g, pair, cfg.tolerance));
}

inline TrialOutcome rational_example(Rng& rng, const TrialConfig& cfg) {
    const auto n = static_cast<std::size_t>(draw_dim(rng, cfg));
    const auto b = uniform_values(rng, n, 0.1, 10.0);
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i)
        a[i] = b[i] * rng.uniform(0.41, 3.0);
    return from_verdict(rational_example_gap(SequencePair(a, b), cfg.tolerance));
}

inline TrialOutcome q_log_sum(Rng& rng, const TrialConfig& cfg) {
    const double q = draw_q_away_from_two(rng, 0.0, 4.0);
    const double r = rng.uniform_open_closed(0.0, 2.0);
    const auto pair = random_sequence_pair(rng, static_cast<std::size_t>(draw_dim(rng, cfg)));
    return from_verdict(q_log_sum_gap(pair, q, r, cfg.tolerance));
}

inline TrialOutcome q_direction(Rng& rng, const TrialConfig& cfg) {
    const auto pair = random_sequence_pair(rng, static_cast<std::size_t>(draw_dim(rng, cfg)));
    TrialOutcome o;
    o.margin = std::numeric_limits<double>::infinity();
    for (double q : {0.0, 0.5, 1.5, 2.5, 3.0}) {
        const auto v = from_verdict(q_log_sum_gap(pair, q, 1.0, cfg.tolerance));
        merge(o, v);
        if (v.violated)
            o.counters[q < 2.0 ? "forward_violations" : "reversed_violations"] += 1;
    }
    return o;
}

/// Each identity is compared relative to the largest magnitude among its terms.
inline TrialOutcome q_log_identities(Rng& rng, const TrialConfig& cfg) {
    const double x = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
    const double y = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
    double q = rng.uniform(-2.0, 4.0);
    while (std::abs(q - 1.0) <= 1e-6)
        q = rng.uniform(-2.0, 4.0);
    const QLogParams p{q};
    const double lx = q_log(x, p), ly = q_log(y, p);
    const double px = ::logsum::detail::deformed_power(x, p);
    const double py = ::logsum::detail::deformed_power(y, p);

    TrialOutcome o;
    o.margin = std::numeric_limits<double>::infinity();
    auto check = [&](const char* name, double got, double want, double terms) {
        const double err = std::abs(got - want) / std::max({1.0, std::abs(want), terms});
        o.maxima[std::string(name) + "_error"] = err;
        o.margin = std::min(o.margin, -err);
        if (err > cfg.tolerance) {
            o.violated = true;
            o.counters[std::string(name) + "_violations"] += 1;
        }
    };
    const double lxy = q_log(x * y, p);
    check("product", q_log_product(x, y, p), lxy, std::max({std::abs(lx), std::abs(ly), std::abs((1.0 - q) * lx * ly)}));
    check("product_alt", q_log_product_alt(x, y, p), lxy, std::max(std::abs(px * ly), std::abs(lx)));
    check("quotient", q_log_quotient(x, y, p), q_log(x / y, p), std::max(std::abs(lx), std::abs(ly)) / py);
    check("reciprocal", q_log_reciprocal(y, p), q_log(1.0 / y, p), std::abs(ly) / py);
    check("pseudo_power", q_log_pseudo_power(x, p), px, std::abs((1.0 - q) * lx));
    return o;
}

// --- trace ---------------------------------------------------------------

inline TrialOutcome trace_log_sum(Rng& rng, const TrialConfig& cfg) {
    const auto pr = random_commuting_pair(rng, draw_dim(rng, cfg), cfg.generator.spectrum_lo, cfg.generator.spectrum_hi);
    const bool plain = rng.chance(0.5);
    const auto f = plain ? FunctionSpec::log() : draw_xfx_convex(rng);
    const auto g = plain ? FunctionSpec::identity() : draw_positive_map(rng);
    return from_trace(trace_log_sum_gap(f, g, pr.A, pr.B, cfg.tolerance), path_agreement_tolerance);
}

/// Spectra stay in (0.5, 3]: exp(A log B) has condition number up to
/// exp(lambda_max |log lambda_min|), and the log-det path loses those digits.
inline TrialOutcome exp_log_trace(Rng& rng, const TrialConfig& cfg) {
    const auto pr = random_commuting_pair(rng, draw_dim(rng, cfg), 0.5, 3.0);
    const auto res = exp_log_trace_gap(pr.A, pr.B, cfg.tolerance);
    auto o = from_verdict(res.verdict);
    o.maxima["logdet_path_difference"] = relative_difference(res.verdict.lhs, res.logdet_path_lhs);
    o.oracle_mismatch = !res.paths_agree();
    return o;
}

inline TrialOutcome quantum_relative_entropy_suite(Rng& rng, const TrialConfig& cfg) {
    const auto pr = random_commuting_densities(rng, draw_dim(rng, cfg));
    const double d = quantum_relative_entropy(pr.rho, pr.sigma);
    const double self = quantum_relative_entropy(pr.rho, pr.rho);
    TrialOutcome o;
    o.margin = std::min(d, 1e-10 - std::abs(self));
    o.maxima["self_divergence"] = std::abs(self);
    o.violated = d < -cfg.tolerance || std::abs(self) > 1e-10;
    return o;
}

inline TrialOutcome von_neumann_entropy_suite(Rng& rng, const TrialConfig& cfg) {
    const auto n = draw_dim(rng, cfg);
    const auto rho = random_density(rng, n);
    const double s = von_neumann_entropy(rho);
    const double cap = std::log(static_cast<double>(n));
    TrialOutcome o;
    o.margin = std::min(s, cap - s);
    o.violated = s < -cfg.tolerance || s > cap + cfg.tolerance;
    return o;
}

inline TrialOutcome q_trace(Rng& rng, const TrialConfig& cfg) {
    const auto pr = random_commuting_pair(rng, draw_dim(rng, cfg), cfg.generator.spectrum_lo, cfg.generator.spectrum_hi);
    const double q = draw_q_away_from_two(rng, 0.0, 4.0);
    const double r = rng.uniform_open_closed(0.0, 2.0);
    return from_trace(q_trace_gap(pr.A, pr.B, q, r, cfg.tolerance), path_agreement_tolerance);
}

inline TrialOutcome reverse_trace(Rng& rng, const TrialConfig& cfg) {
    const auto pr = random_commuting_pair(rng, draw_dim(rng, cfg), cfg.generator.spectrum_lo, cfg.generator.spectrum_hi);
    const auto f = rng.chance(0.5) ? FunctionSpec::log() : FunctionSpec::power(rng.uniform(0.0, 1.0));
    const auto g = draw_positive_map(rng);
    return from_trace(reverse_trace_gap(f, g, pr.A, pr.B, cfg.tolerance), path_agreement_tolerance);
}

// --- Loewner order ---------------------------------------------------------

inline TrialOutcome hansen_jensen(Rng& rng, const TrialConfig& cfg) {
    const auto n = draw_dim(rng, cfg);
    const auto k = random_contraction(rng, n);
    const auto x = random_psd(rng, n);
    return from_verdict(hansen_jensen_residual(OperatorFunctionSpec::power(0.5), k, x, cfg.tolerance));
}

inline TrialOutcome hansen_jensen_convex(Rng& rng, const TrialConfig& cfg) {
    const auto n = draw_dim(rng, cfg);
    const auto k = random_contraction(rng, n);
    const auto x = random_psd(rng, n);
    return from_verdict(hansen_jensen_residual(OperatorFunctionSpec::power(rng.uniform(1.0, 2.0)), k, x, cfg.tolerance));
}

inline OperatorFunctionSpec draw_concave(Rng& rng) {
    switch (rng.integer(0, 2)) {
    case 0:
        return OperatorFunctionSpec::power(0.5);
    case 1:
        return OperatorFunctionSpec::log();
    default:
        return OperatorFunctionSpec::shifted_log(1.0);
    }
}

inline TrialOutcome perspective_sum(Rng& rng, const TrialConfig& cfg) {
    const auto n = draw_dim(rng, cfg);
    const auto m = draw_m(rng, cfg);
    const auto f = draw_concave(rng);
    const auto fam = random_expansive_families(rng, m, n);
    const auto res = perspective_sum_residual(f, fam.A, fam.B, {cfg.tolerance, true});
    auto o = from_verdict(res.verdict);
    if (res.summed_image) {
        const auto alt = from_verdict(*res.summed_image);
        merge(o, alt);
        if (alt.violated)
            o.counters["summed_image_violations"] += 1;
    }
    o.maxima["identity_discrepancy"] = res.identity_discrepancy;
    return o;
}

inline TrialOutcome operator_shannon(Rng& rng, const TrialConfig& cfg) {
    const auto n = draw_dim(rng, cfg);
    const auto m = draw_m(rng, cfg);
    const auto f = rng.chance(0.5) ? OperatorFunctionSpec::log() : OperatorFunctionSpec::power(0.5, -1.0);
    const auto fam = random_balanced_families(rng, m, n);
    return from_verdict(operator_shannon_residual(fam.A, fam.B, f, cfg.tolerance));
}

inline TrialOutcome quadratic_inverse_sum(Rng& rng, const TrialConfig& cfg) {
    const auto n = draw_dim(rng, cfg);
    const auto m = draw_m(rng, cfg);
    const auto a = family_of(rng, m, n, pd_default);
    std::vector<Matrix> x;
    for (std::size_t i = 0; i < m; ++i)
        x.push_back(gaussian_matrix(rng, n, n) * rng.uniform(0.1, 3.0));
    return from_verdict(quadratic_inverse_sum_residual(x, a, cfg.tolerance));
}

inline TrialOutcome inverse_mean(Rng& rng, const TrialConfig& cfg) {
    const auto n = draw_dim(rng, cfg);
    const auto m = draw_m(rng, cfg);
    const auto fam = random_pd_families(rng, m, n);
    return from_verdict(inverse_mean_residual(OperatorFunctionSpec::power(0.5), fam.A, fam.B, cfg.tolerance));
}

inline TrialOutcome sandwiched_inverse_mean(Rng& rng, const TrialConfig& cfg) {
    const auto n = draw_dim(rng, cfg);
    const auto m = draw_m(rng, cfg);
    const auto fam = random_pd_families(rng, m, n);
    return from_verdict(sandwiched_inverse_mean_residual(OperatorFunctionSpec::power(0.5), fam.A, fam.B, cfg.tolerance));
}

inline TrialOutcome nested_inverse_mean(Rng& rng, const TrialConfig& cfg) {
    const auto nest = random_nested(rng, draw_dim(rng, cfg));
    return from_verdict(nested_inverse_mean_residual(OperatorFunctionSpec::power(0.5), nest.A_i, nest.B_i, nest.A, nest.B,
                                                     cfg.tolerance));
}

inline TrialOutcome congruence_order(Rng& rng, const TrialConfig& cfg) {
    const auto n = draw_dim(rng, cfg);
    const auto r = random_psd(rng, n);
    const auto x = gaussian_matrix(rng, n, n);
    const auto c = congruence(x, r);
    return from_verdict(loewner_verdict(c, std::max(c.max_norm(), r.max_norm() * max_norm(x) * max_norm(x)), cfg.tolerance));
}

inline TrialOutcome inverse_antitone(Rng& rng, const TrialConfig& cfg) {
    const auto n = draw_dim(rng, cfg);
    const auto a = random_pd(rng, n, 0.2, 10.0);
    const auto b = a + random_psd(rng, n);
    return from_verdict(loewner_leq(psd_inverse(b), psd_inverse(a), cfg.tolerance));
}

/// |B_i^{1/2} B^{-1/2}| < 1 whenever B - B_i is positive definite.
inline TrialOutcome contraction_norm(Rng& rng, const TrialConfig& cfg) {
    const auto n = draw_dim(rng, cfg);
    const auto b_i = random_pd(rng, n);
    const auto b = b_i + random_pd(rng, n, 0.05, 5.0);
    const double norm = operator_norm(psd_sqrt(b_i).matrix() * psd_inverse_sqrt(b).matrix());
    TrialOutcome o;
    o.margin = 1.0 + 1e-10 - norm;
    o.violated = !(norm < 1.0 + 1e-10);
    o.maxima["operator_norm"] = norm;
    return o;
}

} // namespace detail

/// Every registered suite. Aliases carry the operation names used by external
/// configuration files.
inline const std::vector<SuiteDef>& suite_registry() {
    using namespace detail;
    static const std::vector<SuiteDef> registry = {
        {"scalar_log_sum", {"log_sum"}, "forward inequality, f = log, g = identity", scalar_log_sum},
        {"scalar_log_sum_equality", {}, "a_i = c b_i gives equality", scalar_log_sum_equality},
        {"generalized_log_sum", {"generalized_log_sum_gap"}, "forward inequality over convex x f(x) and positive g",
         generalized_log_sum},
        {"ratio_bounds", {}, "ratio bounds are attained and enclose every ratio", ratio_bounds_suite},
        {"convexity_check", {}, "grid curvature test against known answers", convexity_check_suite},
        {"reverse_log_sum", {"reverse_log_sum_gap"}, "reverse inequality over concave x f(1/x)", reverse_log_sum},
        {"rational_example", {"rational_example_gap"}, "x / (x^2 + 2) instance", rational_example},
        {"q_log_sum", {"q_log_sum_gap"}, "q-log instance, direction by q", q_log_sum},
        {"q_direction", {}, "fixed q grid on both sides of 2", q_direction},
        {"q_log_identities", {"q_log"}, "product, quotient, reciprocal and pseudo-power identities", q_log_identities},
        {"trace_log_sum", {"trace_log_sum_gap"}, "trace form on commuting pairs, both paths", trace_log_sum},
        {"exp_log_trace", {"exp_log_trace_gap"}, "tr A log A - tr A log B form", exp_log_trace},
        {"quantum_relative_entropy", {"relative_entropy"}, "D(rho||sigma) >= 0 and D(rho||rho) = 0",
         quantum_relative_entropy_suite},
        {"von_neumann_entropy", {"entropy"}, "0 <= S(rho) <= ln n", von_neumann_entropy_suite},
        {"q_trace", {"q_trace_gap"}, "q-log trace form on commuting pairs", q_trace},
        {"reverse_trace", {"reverse_trace_gap"}, "reverse trace form on commuting pairs", reverse_trace},
        {"hansen_jensen", {"hansen_jensen_residual", "lemma8"}, "f(K^H X K) >= K^H f(X) K, f = t^(1/2)", hansen_jensen},
        {"hansen_jensen_convex", {}, "K^H f(X) K >= f(K^H X K), f = t^r with r in [1, 2]", hansen_jensen_convex},
        {"perspective_sum", {"theorem6", "theorem6_residual"}, "perspective sum over expansive families",
         perspective_sum},
        {"operator_shannon", {"operator_shannon_residual"}, "balanced families with f(1) = 0", operator_shannon},
        {"quadratic_inverse_sum", {"lemma9", "lemma9_residual"}, "(sum X)^H (sum A)^-1 (sum X) <= sum X^H A^-1 X",
         quadratic_inverse_sum},
        {"inverse_mean", {"theorem10_1", "theorem10_residual_1"}, "inverse mean bound, f = t^(1/2)", inverse_mean},
        {"sandwiched_inverse_mean", {"theorem10_2", "theorem10_residual_2"}, "sandwiched inverse mean bound, f = t^(1/2)",
         sandwiched_inverse_mean},
        {"nested_inverse_mean", {"intermediate_57", "intermediate_57_residual"}, "W(A_i, B_i) <= W(A, B) for nested pairs",
         nested_inverse_mean},
        {"congruence_order", {}, "X^H R X is positive semidefinite", congruence_order},
        {"inverse_antitone", {}, "A <= B implies B^-1 <= A^-1", inverse_antitone},
        {"contraction_norm", {}, "|B_i^(1/2) B^(-1/2)| < 1 for B > B_i", contraction_norm},
    };
    return registry;
}

inline const SuiteDef* find_suite(const std::string& name) {
    for (const auto& s : suite_registry()) {
        if (s.name == name)
            return &s;
        if (std::find(s.aliases.begin(), s.aliases.end(), name) != s.aliases.end())
            return &s;
    }
    return nullptr;
}

inline const SuiteDef& require_suite(const std::string& name) {
    const auto* s = find_suite(name);
    if (!s)
        throw precondition_error("unknown suite '" + name + "'");
    return *s;
}

struct TrialRecord {
    TrialOutcome outcome;
    std::uint64_t generation_failures = 0;
};

/// One trial from its own seed. Precondition or domain failures raised by the
/// generated instance are retried with further draws from the same stream;
/// eigensolver failures propagate.
inline TrialRecord run_trial(const SuiteDef& suite, const TrialConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    TrialRecord rec;
    for (int attempt = 0; attempt < max_generation_attempts; ++attempt) {
        try {
            rec.outcome = suite.trial(rng, cfg);
            return rec;
        } catch (const convergence_error&) {
            throw;
        } catch (const precondition_error&) {
        } catch (const domain_error&) {
        } catch (const singularity_error&) {
        }
        ++rec.generation_failures;
    }
    throw precondition_error("suite " + suite.name + ": no valid instance after " + std::to_string(max_generation_attempts) +
                             " draws");
}

namespace detail {

inline void absorb(SuiteReport& rep, const TrialRecord& rec, std::uint64_t index, std::uint64_t seed) {
    const auto& o = rec.outcome;
    ++rep.trials_run;
    rep.generation_failures += rec.generation_failures;
    if (o.oracle_mismatch)
        ++rep.oracle_mismatches;
    if (o.violated || o.oracle_mismatch) {
        ++rep.violations;
        if (rep.findings.size() < max_listed_findings)
            rep.findings.push_back({index, seed, o.margin, {}, o.oracle_mismatch ? "oracle mismatch" : o.note});
        else
            ++rep.findings_dropped;
    }
    if (o.margin < rep.worst_gap || rep.trials_run == 1) {
        rep.worst_gap = o.margin;
        rep.worst_case_seed = seed;
        rep.worst_case_index = index;
    }
    for (const auto& [k, v] : o.maxima) {
        auto [it, fresh] = rep.maxima.emplace(k, v);
        if (!fresh)
            it->second = std::max(it->second, v);
    }
    for (const auto& [k, v] : o.counters)
        rep.counters[k] += v;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace detail

/// Runs cfg.trials trials; trial i uses trial_seed(cfg.seed, i).
inline SuiteReport run_suite(const TrialConfig& cfg) {
    cfg.validate();
    const auto& suite = require_suite(cfg.suite);
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = suite.name;
    rep.config = cfg;
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        const auto seed = trial_seed(cfg.seed, i);
        detail::absorb(rep, run_trial(suite, cfg, seed), i, seed);
    }
    rep.wall_time = detail::seconds_since(t0);
    return rep;
}

/// Re-runs the single trial with the given per-trial seed (as reported in
/// worst_case_seed or findings[].trial_seed).
inline SuiteReport replay_trial(const TrialConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    const auto& suite = require_suite(cfg.suite);
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = suite.name;
    rep.mode = "replay";
    rep.config = cfg;
    rep.config.trials = 1;
    detail::absorb(rep, run_trial(suite, cfg, seed), 0, seed);
    rep.wall_time = detail::seconds_since(t0);
    return rep;
}

} // namespace logsum::harness
