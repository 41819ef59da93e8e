#pragma once

// Loewner-order log-sum inequalities for non-commuting positive definite
// families. Every check returns a LoewnerVerdict on a residual rhs - lhs that
// the claim says is positive semidefinite.
//
// Notation used below:
//   perspective         P_f(A, B) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}
//   inverse perspective W_f(A, B) = B^{1/2} [f(B^{1/2} A^{-1} B^{1/2})]^{-1} B^{1/2}

#include "logsum/errors.hpp"
#include "logsum/hermitian.hpp"
#include "logsum/matfun.hpp"
#include "logsum/operator_function.hpp"
#include "logsum/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace logsum {

struct MatrixFamily {
    std::vector<HermitianMatrix> members;

    MatrixFamily() = default;
    explicit MatrixFamily(std::vector<HermitianMatrix> m) : members(std::move(m)) { validate(); }

    void validate() const {
        if (members.empty())
            throw dimension_error("MatrixFamily: needs at least one member");
        for (const auto& x : members)
            if (x.dim() != members.front().dim())
                throw dimension_error("MatrixFamily: members must share one dimension");
    }

    [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
    [[nodiscard]] Eigen::Index dim() const { return members.front().dim(); }
    [[nodiscard]] const HermitianMatrix& operator[](std::size_t i) const { return members[i]; }

    [[nodiscard]] HermitianMatrix sum() const {
        Matrix s = Matrix::Zero(dim(), dim());
        for (const auto& x : members)
            s += x.matrix();
        return HermitianMatrix(s);
    }
};

namespace detail {

inline void require_same_shape(const MatrixFamily& a, const MatrixFamily& b) {
    a.validate();
    b.validate();
    if (a.size() != b.size() || a.dim() != b.dim())
        throw dimension_error("families must have the same size and dimension");
}

inline void require_pd(const MatrixFamily& fam, const char* what) {
    for (std::size_t i = 0; i < fam.size(); ++i)
        if (!is_positive_definite(fam[i]))
            throw precondition_error(std::string(what) + "[" + std::to_string(i) + "] is not positive definite");
}

inline double max_norm_of(std::initializer_list<const HermitianMatrix*> ms) {
    double s = 0.0;
    for (const auto* m : ms)
        s = std::max(s, m->max_norm());
    return s;
}

/// Verdict on lhs <= rhs scaled by the magnitude of both sides.
inline LoewnerVerdict order_verdict(const HermitianMatrix& lhs, const HermitianMatrix& rhs, double tol) {
    return loewner_verdict(rhs - lhs, max_norm_of({&lhs, &rhs}), tol);
}

inline void require_positive_image(const SpectralDecomposition& dec, const char* what) {
    const double floor = 1e-10 * std::max(1.0, dec.spectral_radius());
    if (!(dec.min_eigenvalue() > floor)) {
        std::ostringstream os;
        os << what << ": f-image has eigenvalue " << dec.min_eigenvalue() << " and cannot be inverted";
        throw singularity_error(os.str());
    }
}

} // namespace detail

inline HermitianMatrix perspective(const OperatorFunctionSpec& f, const HermitianMatrix& A, const HermitianMatrix& B) {
    const auto dec = spectral_decompose(A);
    const auto root = psd_sqrt(dec);
    const auto inv_root = psd_inverse_sqrt(dec, default_inverse_floor(dec));
    return sandwich(root, apply_function_psd(f, sandwich(inv_root, B)));
}

inline HermitianMatrix inverse_perspective(const OperatorFunctionSpec& f, const HermitianMatrix& A, const HermitianMatrix& B) {
    const auto b_root = psd_sqrt(B);
    const auto image = apply_function_psd(f, sandwich(b_root, psd_inverse(A)));
    const auto dec = spectral_decompose(image);
    detail::require_positive_image(dec, "inverse_perspective");
    return sandwich(b_root, psd_inverse(dec, default_inverse_floor(dec)));
}

/// Operator Jensen check under a contraction K. For operator monotone f with
/// f(0) >= 0 the residual is f(K^H X K) - K^H f(X) K; for operator convex f
/// with f(0) <= 0 it is K^H f(X) K - f(K^H X K).
inline LoewnerVerdict hansen_jensen_residual(const OperatorFunctionSpec& f, const Matrix& contraction,
                                             const HermitianMatrix& X, double tol = default_tolerance) {
    if (contraction.rows() != contraction.cols() || contraction.rows() != X.dim())
        throw dimension_error("hansen_jensen_residual: contraction must be square and match X");
    const double norm = operator_norm(contraction);
    if (norm > 1.0 + 1e-12)
        throw precondition_error("hansen_jensen_residual: operator norm " + std::to_string(norm) + " exceeds 1");
    if (!f.defined_at_zero())
        throw domain_error("hansen_jensen_residual: " + f.name() + " must be defined on [0, inf)");
    const auto xdec = spectral_decompose(X);
    if (xdec.min_eigenvalue() < -1e-12 * std::max(1.0, xdec.spectral_radius()))
        throw domain_error("hansen_jensen_residual: X must have spectrum in [0, inf)");

    const auto cls = f.operator_class();
    const double f0 = f(0.0);
    const auto inner = apply_function_psd(f, congruence(contraction, X));
    const auto outer = congruence(contraction, apply_function_psd(f, X));
    if (cls.monotone) {
        if (f0 < 0.0)
            throw precondition_error("hansen_jensen_residual: monotone direction needs f(0) >= 0");
        return detail::order_verdict(outer, inner, tol);
    }
    if (cls.convex) {
        if (f0 > 0.0)
            throw precondition_error("hansen_jensen_residual: convex direction needs f(0) <= 0");
        return detail::order_verdict(inner, outer, tol);
    }
    throw precondition_error("hansen_jensen_residual: " + f.name() + " is neither operator monotone nor operator convex");
}

struct PerspectiveSumOptions {
    double tolerance = default_tolerance;
    /// Require sum A_i >= m I. The contractive search turns this off.
    bool enforce_expansivity = true;
};

struct PerspectiveSumResult {
    /// sum_i P_f(A_i, B_i) <= P_f(sum A_i, sum B_i)
    LoewnerVerdict verdict;
    /// sum_i f(B_i) <= P_f(sum A_i, sum B_i); only formed when f(0) >= 0.
    std::optional<LoewnerVerdict> summed_image;
    /// max_i |P_f(A_i, B_i) - f(B_i)|_max / max(1, |f(B_i)|_max); zero only
    /// when each pair commutes.
    double identity_discrepancy = 0.0;
};

/// Superadditivity of the perspective of an operator concave f over an
/// expansive family (sum A_i >= m I).
inline PerspectiveSumResult perspective_sum_residual(const OperatorFunctionSpec& f, const MatrixFamily& A_family,
                                                     const MatrixFamily& B_family, const PerspectiveSumOptions& opts = {}) {
    detail::require_same_shape(A_family, B_family);
    if (!f.operator_class().concave)
        throw precondition_error("perspective_sum_residual: " + f.name() + " is not operator concave");
    detail::require_pd(A_family, "A");
    detail::require_pd(B_family, "B");

    const auto m = static_cast<double>(A_family.size());
    const auto A = A_family.sum();
    const auto B = B_family.sum();
    if (opts.enforce_expansivity) {
        const auto expansive = loewner_leq(m * HermitianMatrix::identity(A.dim()), A, opts.tolerance);
        if (!expansive.holds)
            throw precondition_error("perspective_sum_residual: sum of A_i is not >= m I (min eigenvalue of A - mI = " +
                                     std::to_string(expansive.residual_min_eigenvalue) + ")");
    }

    PerspectiveSumResult out;
    Matrix lhs = Matrix::Zero(A.dim(), A.dim());
    Matrix image_sum = Matrix::Zero(A.dim(), A.dim());
    const bool image_defined = f.defined_at_zero() && f(0.0) >= 0.0;
    for (std::size_t i = 0; i < A_family.size(); ++i) {
        const auto term = perspective(f, A_family[i], B_family[i]);
        const auto image = apply_function(f, B_family[i]);
        lhs += term.matrix();
        image_sum += image.matrix();
        out.identity_discrepancy = std::max(out.identity_discrepancy,
                                            max_norm(term.matrix() - image.matrix()) / std::max(1.0, image.max_norm()));
    }
    const auto rhs = perspective(f, A, B);
    out.verdict = detail::order_verdict(HermitianMatrix(lhs), rhs, opts.tolerance);
    if (image_defined)
        out.summed_image = detail::order_verdict(HermitianMatrix(image_sum), rhs, opts.tolerance);
    return out;
}

/// sum_i P_f(A_i, B_i) <= 0 when sum A_i = sum B_i >= m I and f(1) = 0.
inline LoewnerVerdict operator_shannon_residual(const MatrixFamily& A_family, const MatrixFamily& B_family,
                                                const OperatorFunctionSpec& f, double tol = default_tolerance) {
    detail::require_same_shape(A_family, B_family);
    if (!f.operator_class().concave)
        throw precondition_error("operator_shannon_residual: " + f.name() + " is not operator concave");
    if (std::abs(f(1.0)) > 1e-12)
        throw precondition_error("operator_shannon_residual: f(1) must vanish, got " + std::to_string(f(1.0)));
    detail::require_pd(A_family, "A");
    detail::require_pd(B_family, "B");
    const auto A = A_family.sum();
    const auto B = B_family.sum();
    if (max_norm(A.matrix() - B.matrix()) > tol * std::max(1.0, std::max(A.max_norm(), B.max_norm())))
        throw precondition_error("operator_shannon_residual: sum A_i and sum B_i differ");
    const auto m = static_cast<double>(A_family.size());
    if (!loewner_leq(m * HermitianMatrix::identity(A.dim()), A, tol).holds)
        throw precondition_error("operator_shannon_residual: sum of A_i is not >= m I");

    Matrix lhs = Matrix::Zero(A.dim(), A.dim());
    for (std::size_t i = 0; i < A_family.size(); ++i)
        lhs += perspective(f, A_family[i], B_family[i]).matrix();
    return detail::order_verdict(HermitianMatrix(lhs), HermitianMatrix::zero(A.dim()), tol);
}

/// (sum X_i)^H (sum A_i)^{-1} (sum X_i) <= sum X_i^H A_i^{-1} X_i for positive definite A_i.
inline LoewnerVerdict quadratic_inverse_sum_residual(const std::vector<Matrix>& X_family, const MatrixFamily& A_family,
                                                     double tol = default_tolerance) {
    A_family.validate();
    if (X_family.size() != A_family.size())
        throw dimension_error("quadratic_inverse_sum_residual: families must have equal size");
    const auto n = A_family.dim();
    for (const auto& x : X_family)
        if (x.rows() != n || x.cols() != n)
            throw dimension_error("quadratic_inverse_sum_residual: X_i must be n x n");
    detail::require_pd(A_family, "A");

    Matrix lhs = Matrix::Zero(n, n);
    Matrix x_sum = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < A_family.size(); ++i) {
        lhs += congruence(X_family[i], psd_inverse(A_family[i])).matrix();
        x_sum += X_family[i];
    }
    const auto rhs = congruence(x_sum, psd_inverse(A_family.sum()));
    return detail::order_verdict(rhs, HermitianMatrix(lhs), tol);
}

namespace detail {

inline void require_monotone(const OperatorFunctionSpec& f, const char* what) {
    if (!f.operator_class().monotone)
        throw precondition_error(std::string(what) + ": " + f.name() + " is not operator monotone");
}

} // namespace detail

/// (1/m)(sum B_i^{1/2}) [sum f(B_i^{1/2} A_i^{-1} B_i^{1/2})]^{-1} (sum B_i^{1/2}) <= W_f(A, B).
inline LoewnerVerdict inverse_mean_residual(const OperatorFunctionSpec& f, const MatrixFamily& A_family,
                                            const MatrixFamily& B_family, double tol = default_tolerance) {
    detail::require_same_shape(A_family, B_family);
    detail::require_monotone(f, "inverse_mean_residual");
    detail::require_pd(A_family, "A");
    detail::require_pd(B_family, "B");
    const auto n = A_family.dim();
    const auto m = static_cast<double>(A_family.size());

    Matrix root_sum = Matrix::Zero(n, n);
    Matrix image_sum = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < A_family.size(); ++i) {
        const auto b_root = psd_sqrt(B_family[i]);
        root_sum += b_root.matrix();
        image_sum += apply_function_psd(f, sandwich(b_root, psd_inverse(A_family[i]))).matrix();
    }
    const auto image_dec = spectral_decompose(HermitianMatrix(image_sum));
    detail::require_positive_image(image_dec, "inverse_mean_residual");
    const auto lhs = (1.0 / m) * sandwich(HermitianMatrix(root_sum), psd_inverse(image_dec, default_inverse_floor(image_dec)));
    const auto rhs = inverse_perspective(f, A_family.sum(), B_family.sum());
    return detail::order_verdict(lhs, rhs, tol);
}

/// sum A_i^{1/2} W_f(A_i, B_i) A_i^{1/2} <= (1/m)(sum A_i^{1/2}) W_f(A, B) (sum A_i^{1/2}).
/// This form does not hold in general; see the scalar counterexample in the tests.
inline LoewnerVerdict sandwiched_inverse_mean_residual(const OperatorFunctionSpec& f, const MatrixFamily& A_family,
                                                       const MatrixFamily& B_family, double tol = default_tolerance) {
    detail::require_same_shape(A_family, B_family);
    detail::require_monotone(f, "sandwiched_inverse_mean_residual");
    detail::require_pd(A_family, "A");
    detail::require_pd(B_family, "B");
    const auto n = A_family.dim();
    const auto m = static_cast<double>(A_family.size());

    Matrix lhs = Matrix::Zero(n, n);
    Matrix root_sum = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < A_family.size(); ++i) {
        const auto a_root = psd_sqrt(A_family[i]);
        root_sum += a_root.matrix();
        lhs += sandwich(a_root, inverse_perspective(f, A_family[i], B_family[i])).matrix();
    }
    const auto whole = inverse_perspective(f, A_family.sum(), B_family.sum());
    const auto rhs = (1.0 / m) * sandwich(HermitianMatrix(root_sum), whole);
    return detail::order_verdict(HermitianMatrix(lhs), rhs, tol);
}

/// W_f(A_i, B_i) <= W_f(A, B) for A >= A_i and B > B_i.
inline LoewnerVerdict nested_inverse_mean_residual(const OperatorFunctionSpec& f, const HermitianMatrix& A_i,
                                                   const HermitianMatrix& B_i, const HermitianMatrix& A,
                                                   const HermitianMatrix& B, double tol = default_tolerance) {
    detail::require_monotone(f, "nested_inverse_mean_residual");
    for (const auto* x : {&A_i, &B_i, &A, &B}) {
        HermitianMatrix::check_same_dim(A, *x);
        if (!is_positive_definite(*x))
            throw precondition_error("nested_inverse_mean_residual: all four matrices must be positive definite");
    }
    if (!loewner_leq(A_i, A, tol).holds)
        throw precondition_error("nested_inverse_mean_residual: A - A_i is not positive semidefinite");
    if (!(min_eigenvalue(B - B_i) > 0.0))
        throw precondition_error("nested_inverse_mean_residual: B - B_i is not positive definite");
    return detail::order_verdict(inverse_perspective(f, A_i, B_i), inverse_perspective(f, A, B), tol);
}

/// Scalar (1 x 1) forms of the inequalities above, written out directly.
namespace scalar_forms {

/// sum a_i f(b_i / a_i) <= a f(b / a); returns rhs - lhs.
template <typename F>
double perspective_sum_gap(const F& f, const std::vector<double>& a, const std::vector<double>& b) {
    double lhs = 0.0, sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        lhs += a[i] * f(b[i] / a[i]);
        sa += a[i];
        sb += b[i];
    }
    return sa * f(sb / sa) - lhs;
}

/// (1/m)(sum b_i^{1/2})^2 [sum f(b_i/a_i)]^{-1} <= b [f(b/a)]^{-1}; returns {lhs, rhs}.
template <typename F>
std::pair<double, double> inverse_mean(const F& f, const std::vector<double>& a, const std::vector<double>& b) {
    double roots = 0.0, images = 0.0, sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        roots += std::sqrt(b[i]);
        images += f(b[i] / a[i]);
        sa += a[i];
        sb += b[i];
    }
    const double m = static_cast<double>(a.size());
    return {roots * roots / (m * images), sb / f(sb / sa)};
}

/// sum a_i b_i [f(b_i/a_i)]^{-1} <= (1/m)(sum a_i^{1/2})^2 b [f(b/a)]^{-1}; returns {lhs, rhs}.
template <typename F>
std::pair<double, double> sandwiched_inverse_mean(const F& f, const std::vector<double>& a, const std::vector<double>& b) {
    double lhs = 0.0, roots = 0.0, sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        lhs += a[i] * b[i] / f(b[i] / a[i]);
        roots += std::sqrt(a[i]);
        sa += a[i];
        sb += b[i];
    }
    const double m = static_cast<double>(a.size());
    return {lhs, roots * roots * sb / (m * f(sb / sa))};
}

} // namespace scalar_forms

} // namespace logsum
