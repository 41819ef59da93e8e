#pragma once

// Trace-form log-sum inequalities for commuting self-adjoint matrices and the
// quantum-information quantities derived from them.
//
// Every operation evaluates the inequality twice: once on the joint
// eigenvalues (where it reduces to the scalar inequality) and once through
// products of matrix functions. The joint-eigenbasis verdict is authoritative;
// the matrix path is reported next to it as a cross-check of the functional
// calculus.

#include "logsum/errors.hpp"
#include "logsum/function_spec.hpp"
#include "logsum/hermitian.hpp"
#include "logsum/matfun.hpp"
#include "logsum/scalar_ineq.hpp"
#include "logsum/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

namespace logsum {

inline constexpr double path_agreement_tolerance = 1e-9;

/// |x - y| <= tol * max(1, |x|, |y|)
inline bool agree(double x, double y, double tol) {
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

/// Positive semidefinite Hermitian matrix with unit trace.
class DensityMatrix {
public:
    explicit DensityMatrix(HermitianMatrix base) : base_(std::move(base)) {
        const auto dec = spectral_decompose(base_);
        if (dec.min_eigenvalue() < -1e-12 * std::max(1.0, dec.spectral_radius()))
            throw domain_error("DensityMatrix: matrix is not positive semidefinite");
        if (std::abs(base_.trace() - 1.0) > 1e-10)
            throw domain_error("DensityMatrix: trace must be 1 within 1e-10");
    }

    [[nodiscard]] const HermitianMatrix& matrix() const noexcept { return base_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return base_.dim(); }

private:
    HermitianMatrix base_;
};

/// Simultaneous eigenbasis of a commuting pair: A = U diag(a) U^H, B = U diag(b) U^H.
struct JointSpectrum {
    Matrix unitary;
    std::vector<double> a;
    std::vector<double> b;
};

/// Decomposes A, then diagonalizes B inside each eigenspace of A.
inline JointSpectrum joint_diagonalize(const HermitianMatrix& A, const HermitianMatrix& B,
                                       double tol = commutation_tolerance) {
    HermitianMatrix::check_same_dim(A, B);
    if (!commutes(A, B, tol)) {
        std::ostringstream os;
        os << "matrices do not commute: |AB - BA| = " << commutator_norm(A, B);
        throw commutation_error(os.str());
    }
    const auto dec = spectral_decompose(A);
    const Eigen::Index n = A.dim();
    Matrix u = dec.unitary;
    const double cluster_tol = 1e-9 * std::max(1.0, dec.spectral_radius());

    const Matrix bp = u.adjoint() * B.matrix() * u;
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && dec.eigenvalues[static_cast<std::size_t>(end)] -
                                  dec.eigenvalues[static_cast<std::size_t>(end - 1)] <= cluster_tol)
            ++end;
        const Eigen::Index len = end - start;
        if (len > 1) {
            const Matrix block = bp.block(start, start, len, len);
            const auto sub = jacobi_eigen(HermitianMatrix(block).matrix());
            u.middleCols(start, len) = (u.middleCols(start, len) * sub.vectors).eval();
        }
        start = end;
    }

    const Matrix da = u.adjoint() * A.matrix() * u;
    const Matrix db = u.adjoint() * B.matrix() * u;
    JointSpectrum js{u, std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
    for (Eigen::Index i = 0; i < n; ++i) {
        js.a[static_cast<std::size_t>(i)] = da(i, i).real();
        js.b[static_cast<std::size_t>(i)] = db(i, i).real();
    }
    const double off_a = max_norm(da - Matrix(da.diagonal().asDiagonal()));
    const double off_b = max_norm(db - Matrix(db.diagonal().asDiagonal()));
    if (off_a > 1e-8 * std::max(1.0, A.max_norm()) || off_b > 1e-8 * std::max(1.0, B.max_norm())) {
        std::ostringstream os;
        os << "joint diagonalization left off-diagonal residue " << std::max(off_a, off_b);
        throw commutation_error(os.str());
    }
    return js;
}

/// Result of a trace-form check: the joint-eigenbasis verdict plus the same
/// inequality evaluated through matrix products.
struct TraceVerdict {
    InequalityVerdict verdict;
    std::optional<InequalityVerdict> matrix_path;
    JointSpectrum spectrum;

    /// Both paths give the same lhs and rhs to path_agreement_tolerance.
    [[nodiscard]] bool paths_agree(double tol = path_agreement_tolerance) const {
        return matrix_path && agree(verdict.lhs, matrix_path->lhs, tol) && agree(verdict.rhs, matrix_path->rhs, tol);
    }
};

namespace detail {

inline bool has_zero(const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

inline double trace_of_product(const HermitianMatrix& x, const HermitianMatrix& y) {
    return (x.matrix() * y.matrix()).trace().real();
}

} // namespace detail

/// tr[g(A) f(g(A) g(B)^-1)] >= tr[g(A)] f(tr g(A) / tr g(B)) for commuting A, B.
inline TraceVerdict trace_log_sum_gap(const FunctionSpec& f, const FunctionSpec& g, const HermitianMatrix& A,
                                      const HermitianMatrix& B, double tol = default_tolerance) {
    auto js = joint_diagonalize(A, B);
    const SequencePair pair(js.a, js.b);
    TraceVerdict out{generalized_log_sum_gap(f, g, pair, tol), std::nullopt, std::move(js)};

    const auto gA = apply_function(g, A);
    const auto gB = apply_function(g, B);
    const auto gB_inv = psd_inverse(gB);
    const auto ratio = hermitize(gA.matrix() * gB_inv.matrix());
    try {
        const auto fr = apply_function(f, ratio);
        const double lhs = detail::trace_of_product(gA, fr);
        const double ta = gA.trace();
        const double rhs = detail::weighted(f, ta, ta / gB.trace());
        out.matrix_path = verdict_geq(lhs, rhs, tol);
    } catch (const domain_error&) {
        // f is undefined on a zero eigenvalue that the eigenbasis path
        // handles through the 0 f(0) = 0 convention.
        std::vector<double> ga(out.spectrum.a.size());
        std::transform(out.spectrum.a.begin(), out.spectrum.a.end(), ga.begin(), [&](double x) { return g(x); });
        if (!detail::has_zero(ga))
            throw;
    }
    return out;
}

struct ExpLogTraceResult {
    InequalityVerdict verdict;
    /// ln det exp(A log A) - ln det exp(A log B), formed from matrices.
    double logdet_path_lhs = 0.0;
    /// tr exp(A log A) - tr exp(A log B), recorded for comparison only.
    double trace_exp_difference = 0.0;

    [[nodiscard]] bool paths_agree(double tol = 1e-8) const { return agree(verdict.lhs, logdet_path_lhs, tol); }
};

/// tr[A log A] - tr[A log B] >= tr(A) log(tr A / tr B) for commuting positive definite A, B.
inline ExpLogTraceResult exp_log_trace_gap(const HermitianMatrix& A, const HermitianMatrix& B,
                                           double tol = default_tolerance) {
    if (!is_positive_definite(A) || !is_positive_definite(B))
        throw precondition_error("exp_log_trace_gap: A and B must be positive definite");
    const auto js = joint_diagonalize(A, B);

    double lhs = 0.0;
    for (std::size_t i = 0; i < js.a.size(); ++i)
        lhs += js.a[i] * std::log(js.a[i]) - js.a[i] * std::log(js.b[i]);
    const double ta = A.trace();
    const double rhs = ta * std::log(ta / B.trace());

    const auto logA = apply_function(FunctionSpec::log(), A);
    const auto logB = apply_function(FunctionSpec::log(), B);
    const auto expAA = apply_function(FunctionSpec::exp(), hermitize(A.matrix() * logA.matrix()));
    const auto expAB = apply_function(FunctionSpec::exp(), hermitize(A.matrix() * logB.matrix()));
    auto log_det = [](const HermitianMatrix& m) {
        double s = 0.0;
        for (double v : spectral_decompose(m).eigenvalues)
            s += std::log(v);
        return s;
    };

    ExpLogTraceResult out;
    out.verdict = verdict_geq(lhs, rhs, tol);
    out.logdet_path_lhs = log_det(expAA) - log_det(expAB);
    out.trace_exp_difference = expAA.trace() - expAB.trace();
    return out;
}

/// Eigenvalues below this are exact zeros for the entropy functionals.
inline constexpr double entropy_zero_threshold = 1e-14;

/// D(rho || sigma) = tr[rho (log rho - log sigma)] for commuting states.
inline double quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const auto js = joint_diagonalize(rho.matrix(), sigma.matrix());
    double d = 0.0;
    for (std::size_t i = 0; i < js.a.size(); ++i) {
        const double p = js.a[i];
        const double s = js.b[i];
        if (p < entropy_zero_threshold)
            continue;
        if (s < entropy_zero_threshold) {
            std::ostringstream os;
            os << "quantum_relative_entropy: rho has weight " << p << " where sigma vanishes (D = +inf)";
            throw support_error(os.str());
        }
        d += p * (std::log(p) - std::log(s));
    }
    return d;
}

/// -tr(rho log rho)
inline double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double p : spectral_decompose(rho.matrix()).eigenvalues)
        if (p >= entropy_zero_threshold)
            s -= p * std::log(p);
    return s;
}

/// (tr B^r)^(1-q) tr[A^r ln_q(A^r B^-r)]  vs  tr(A^r) [ln_q(tr A^r) - ln_q(tr B^r)],
/// >= for q < 2 and <= for q > 2.
inline TraceVerdict q_trace_gap(const HermitianMatrix& A, const HermitianMatrix& B, double q, double r,
                                double tol = default_tolerance) {
    if (!is_positive_definite(B))
        throw precondition_error("q_trace_gap: B must be positive definite");
    auto js = joint_diagonalize(A, B);
    const SequencePair pair(js.a, js.b);
    TraceVerdict out{q_log_sum_gap(pair, q, r, tol), std::nullopt, std::move(js)};

    const QLogParams params{q};
    const auto power = FunctionSpec::power(r);
    const auto Ar = apply_function(power, A);
    const auto Br = apply_function(power, B);
    const auto ratio = hermitize(Ar.matrix() * psd_inverse(Br).matrix());
    try {
        const auto L = apply_function(FunctionSpec::q_log(q), ratio);
        const double ta = Ar.trace();
        const double tb = Br.trace();
        const double lhs = detail::deformed_power(tb, params) * detail::trace_of_product(Ar, L);
        const double rhs = ta * (q_log(ta, params) - q_log(tb, params));
        out.matrix_path = q < 2.0 ? verdict_geq(lhs, rhs, tol) : verdict_leq(lhs, rhs, tol);
    } catch (const domain_error&) {
        if (!detail::has_zero(out.spectrum.a))
            throw;
    }
    return out;
}

/// tr[g(A) f(g(B) g(A)^-1)] <= tr[g(A)] f(tr g(B) / tr g(A)) for commuting A, B
/// when x f(1/x) is concave on the ratio interval.
inline TraceVerdict reverse_trace_gap(const FunctionSpec& f, const FunctionSpec& g, const HermitianMatrix& A,
                                      const HermitianMatrix& B, double tol = default_tolerance) {
    auto js = joint_diagonalize(A, B);
    const SequencePair pair(js.a, js.b);
    TraceVerdict out{reverse_log_sum_gap(f, g, pair, tol), std::nullopt, std::move(js)};

    const auto gA = apply_function(g, A);
    const auto gB = apply_function(g, B);
    const auto ratio = hermitize(gB.matrix() * psd_inverse(gA).matrix());
    const auto fr = apply_function(f, ratio);
    const double lhs = detail::trace_of_product(gA, fr);
    const double ta = gA.trace();
    const double rhs = ta * f(gB.trace() / ta);
    out.matrix_path = verdict_leq(lhs, rhs, tol);
    return out;
}

} // namespace logsum
