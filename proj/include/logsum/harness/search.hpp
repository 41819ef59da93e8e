#pragma once

// Exploration of the perspective-sum inequality on contractive families
// (A_i <= I), where the expansivity hypothesis is dropped. The report makes
// no claim either way; it lists re-verified candidates only.

#include "logsum/harness/generators.hpp"
#include "logsum/harness/report.hpp"
#include "logsum/harness/rng.hpp"
#include "logsum/harness/suites.hpp"
#include "logsum/loewner_ineq.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <string>

namespace logsum::harness {

/// Tightened absolute threshold a candidate must clear on re-verification.
inline constexpr double search_confirmation_threshold = 1e-6;

struct SearchInstance {
    FamilyPair families;
    bool commuting = false;
};

/// Contractive A_i with spectrum in (0.02, 1], positive definite B_i. One
/// trial in four draws all members from one shared eigenbasis.
inline SearchInstance contractive_instance(Rng& rng, const TrialConfig& cfg) {
    const auto n = detail::draw_dim(rng, cfg);
    const auto m = detail::draw_m(rng, cfg);
    SearchInstance out;
    out.commuting = cfg.generator.structure == GeneratorStructure::commuting || rng.chance(0.25);
    if (!out.commuting) {
        out.families = random_contractive_families(rng, m, n);
        return out;
    }
    const SpectralDecomposition basis{haar_unitary(rng, n), {}};
    const auto k = static_cast<std::size_t>(n);
    std::vector<HermitianMatrix> a, b;
    for (std::size_t i = 0; i < m; ++i) {
        a.push_back(basis.rebuild(uniform_values(rng, k, 0.02, 1.0)));
        b.push_back(basis.rebuild(uniform_values(rng, k, 0.1, 10.0)));
    }
    out.families = {MatrixFamily(std::move(a)), MatrixFamily(std::move(b))};
    return out;
}

/// Smallest eigenvalue of P_f(A, B) - sum P_f(A_i, B_i) from Eigen's
/// self-adjoint solver, independent of the Jacobi path.
inline double secondary_residual_min(const OperatorFunctionSpec& f, const FamilyPair& fam) {
    const auto n = fam.A.dim();
    Matrix lhs = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < fam.A.size(); ++i)
        lhs += perspective(f, fam.A[i], fam.B[i]).matrix();
    const Matrix residual = perspective(f, fam.A.sum(), fam.B.sum()).matrix() - lhs;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (residual + residual.adjoint()), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw convergence_error("secondary eigensolver failed on a search candidate");
    return es.eigenvalues().minCoeff();
}

namespace detail {

inline SuiteReport search_report(const TrialConfig& cfg, const OperatorFunctionSpec& f, const char* mode) {
    SuiteReport rep;
    rep.suite = cfg.suite;
    rep.mode = std::string(mode) + ":" + f.name();
    rep.config = cfg;
    rep.counters = {{"candidates", 0},
                    {"candidates_rejected_on_reverification", 0},
                    {"commuting_trials", 0},
                    {"summed_image_form_failures", 0}};
    return rep;
}

inline TrialConfig search_config(const TrialConfig& in, const OperatorFunctionSpec& f) {
    TrialConfig cfg = in;
    cfg.suite = "contractive_search";
    cfg.generator.kind = GeneratorKind::contractive;
    cfg.validate();
    if (!f.operator_class().concave)
        throw precondition_error("search: " + f.name() + " is not operator concave");
    return cfg;
}

inline void search_trial(SuiteReport& rep, const TrialConfig& cfg, const OperatorFunctionSpec& f, std::uint64_t index,
                         std::uint64_t seed) {
    Rng rng(seed);
    const auto inst = contractive_instance(rng, cfg);
    const auto res = perspective_sum_residual(f, inst.families.A, inst.families.B, {cfg.tolerance, false});

    ++rep.trials_run;
    const double margin = res.verdict.relative_margin();
    if (margin < rep.worst_gap || rep.trials_run == 1) {
        rep.worst_gap = margin;
        rep.worst_case_seed = seed;
        rep.worst_case_index = index;
    }
    if (res.summed_image && !res.summed_image->holds)
        ++rep.counters["summed_image_form_failures"];
    if (inst.commuting)
        ++rep.counters["commuting_trials"];
    if (res.verdict.holds)
        return;

    ++rep.counters["candidates"];
    const double secondary = secondary_residual_min(f, inst.families);
    if (!(res.verdict.residual_min_eigenvalue < -search_confirmation_threshold &&
          secondary < -search_confirmation_threshold)) {
        ++rep.counters["candidates_rejected_on_reverification"];
        return;
    }
    ++rep.violations;
    if (rep.findings.size() >= max_listed_findings) {
        ++rep.findings_dropped;
        return;
    }
    rep.findings.push_back({index,
                            seed,
                            margin,
                            {{"residual_min_eigenvalue", res.verdict.residual_min_eigenvalue},
                             {"secondary_min_eigenvalue", secondary},
                             {"m", static_cast<double>(inst.families.A.size())},
                             {"n", static_cast<double>(inst.families.A.dim())}},
                            inst.commuting ? "commuting" : "general"});
}

} // namespace detail

/// Candidates must fail the configured tolerance and then show a residual
/// eigenvalue below -1e-6 under both eigensolvers before they are listed.
inline SuiteReport counterexample_search(const TrialConfig& cfg_in, const OperatorFunctionSpec& f) {
    const auto cfg = detail::search_config(cfg_in, f);
    const auto t0 = std::chrono::steady_clock::now();
    auto rep = detail::search_report(cfg, f, "search");
    for (std::uint64_t i = 0; i < cfg.trials; ++i)
        detail::search_trial(rep, cfg, f, i, trial_seed(cfg.seed, i));
    rep.wall_time = detail::seconds_since(t0);
    return rep;
}

inline SuiteReport replay_search_trial(const TrialConfig& cfg_in, const OperatorFunctionSpec& f, std::uint64_t seed) {
    auto cfg = detail::search_config(cfg_in, f);
    cfg.trials = 1;
    const auto t0 = std::chrono::steady_clock::now();
    auto rep = detail::search_report(cfg, f, "replay");
    detail::search_trial(rep, cfg, f, 0, seed);
    rep.wall_time = detail::seconds_since(t0);
    return rep;
}

} // namespace logsum::harness
