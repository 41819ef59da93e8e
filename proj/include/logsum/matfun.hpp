#pragma once

// Functional calculus for Hermitian matrices, f(A) = U diag(f(a_i)) U^H,
// and the Loewner-order comparison built on it.

#include "logsum/errors.hpp"
#include "logsum/function_spec.hpp"
#include "logsum/hermitian.hpp"
#include "logsum/jacobi.hpp"
#include "logsum/verdict.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace logsum {

inline HermitianMatrix hermitize(const Matrix& m) { return HermitianMatrix(m); }

inline SpectralDecomposition spectral_decompose(const HermitianMatrix& a) {
    auto res = jacobi_eigen(a.matrix());
    return SpectralDecomposition{std::move(res.vectors), std::move(res.values)};
}

template <ScalarFunction F>
HermitianMatrix apply_function(const F& f, const SpectralDecomposition& dec) {
    std::vector<double> mapped(dec.eigenvalues.size());
    for (std::size_t i = 0; i < mapped.size(); ++i) {
        const double lambda = dec.eigenvalues[i];
        if (!f.in_domain(lambda)) {
            std::ostringstream os;
            os.precision(17);
            os << "apply_function: eigenvalue " << lambda << " outside the domain of " << f.name();
            throw domain_error(os.str());
        }
        mapped[i] = f(lambda);
        if (!std::isfinite(mapped[i]))
            throw domain_error("apply_function: " + f.name() + " is not finite on the spectrum");
    }
    return dec.rebuild(mapped);
}

template <ScalarFunction F>
HermitianMatrix apply_function(const F& f, const HermitianMatrix& a) {
    return apply_function(f, spectral_decompose(a));
}

/// f(A) for an A that is positive semidefinite up to round-off. Eigenvalues
/// with |lambda| <= 4 n eps |A| are exact zeros as far as the solver can tell
/// and are set to 0; negatives down to -1e-12 |A| are clamped to 0 as well.
template <ScalarFunction F>
HermitianMatrix apply_function_psd(const F& f, const HermitianMatrix& a) {
    auto dec = spectral_decompose(a);
    const double radius = std::max(1.0, dec.spectral_radius());
    const double band = 4.0 * static_cast<double>(a.dim()) * std::numeric_limits<double>::epsilon() * radius;
    const double threshold = -1e-12 * radius;
    for (double& v : dec.eigenvalues)
        if ((v < 0.0 && v >= threshold) || std::abs(v) <= band)
            v = 0.0;
    return apply_function(f, dec);
}

/// Minimum eigenvalue; the spectrum comes from the same Jacobi solver.
inline double min_eigenvalue(const HermitianMatrix& a) { return spectral_decompose(a).min_eigenvalue(); }

/// Outcome of a Loewner comparison lhs <= rhs, decided on residual = rhs - lhs.
/// scale = max(1, |lhs|_max, |rhs|_max); the claim holds when
/// residual_min_eigenvalue >= -tolerance * scale.
struct LoewnerVerdict {
    double residual_min_eigenvalue = 0.0;
    double residual_norm = 0.0;
    double scale = 1.0;
    double tolerance = default_tolerance;
    bool holds = true;

    [[nodiscard]] double relative_margin() const noexcept { return residual_min_eigenvalue / scale; }
};

inline LoewnerVerdict loewner_verdict(const HermitianMatrix& residual, double scale, double tol) {
    LoewnerVerdict v;
    v.residual_min_eigenvalue = min_eigenvalue(residual);
    v.residual_norm = residual.max_norm();
    v.scale = std::max(1.0, scale);
    v.tolerance = tol;
    v.holds = v.residual_min_eigenvalue >= -tol * v.scale;
    return v;
}

/// Verdict on lhs <= rhs in the Loewner order.
inline LoewnerVerdict loewner_leq(const HermitianMatrix& lhs, const HermitianMatrix& rhs, double tol = default_tolerance) {
    HermitianMatrix::check_same_dim(lhs, rhs);
    return loewner_verdict(rhs - lhs, std::max(lhs.max_norm(), rhs.max_norm()), tol);
}

/// Max-norm of AB - BA.
inline double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b) {
    HermitianMatrix::check_same_dim(a, b);
    return max_norm(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

inline constexpr double commutation_tolerance = 1e-9;

/// |AB - BA| <= tol |A| |B| in max-norm.
inline bool commutes(const HermitianMatrix& a, const HermitianMatrix& b, double tol = commutation_tolerance) {
    return commutator_norm(a, b) <= tol * a.max_norm() * b.max_norm();
}

inline double unitarity_defect(const Matrix& u) {
    if (u.rows() != u.cols())
        throw dimension_error("unitarity_defect: matrix must be square");
    return max_norm(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

/// (U diag(la) U^H, U diag(lb) U^H); the two share U and therefore commute.
inline std::pair<HermitianMatrix, HermitianMatrix> make_commuting_pair(const Matrix& u, std::span<const double> lambda_a,
                                                                       std::span<const double> lambda_b) {
    if (u.rows() != u.cols() || static_cast<std::size_t>(u.rows()) != lambda_a.size() ||
        lambda_a.size() != lambda_b.size())
        throw dimension_error("make_commuting_pair: U must be n x n with two eigenvalue lists of length n");
    if (unitarity_defect(u) > 1e-10)
        throw precondition_error("make_commuting_pair: U is not unitary to 1e-10");
    SpectralDecomposition dec{u, {}};
    return {dec.rebuild(lambda_a), dec.rebuild(lambda_b)};
}

/// Default eigenvalue floor for inversion: 1e-10 times the spectral radius.
inline double default_inverse_floor(const SpectralDecomposition& dec) { return 1e-10 * dec.spectral_radius(); }

namespace detail {

inline void require_floor(const SpectralDecomposition& dec, double floor, const char* what) {
    if (!(dec.min_eigenvalue() >= floor) || !(floor > 0.0)) {
        std::ostringstream os;
        os.precision(6);
        os << what << ": minimum eigenvalue " << dec.min_eigenvalue() << " below the floor " << floor;
        throw singularity_error(os.str());
    }
}

inline std::vector<double> clamp_psd_spectrum(const SpectralDecomposition& dec, const char* what) {
    const double threshold = -1e-12 * std::max(1.0, dec.spectral_radius());
    std::vector<double> values = dec.eigenvalues;
    for (double& v : values) {
        if (v < threshold) {
            std::ostringstream os;
            os.precision(6);
            os << what << ": negative eigenvalue " << v << " beyond the PSD clamp";
            throw domain_error(os.str());
        }
        v = std::max(v, 0.0);
    }
    return values;
}

} // namespace detail

inline HermitianMatrix psd_inverse(const SpectralDecomposition& dec, double floor) {
    detail::require_floor(dec, floor, "psd_inverse");
    std::vector<double> inv(dec.eigenvalues.size());
    std::transform(dec.eigenvalues.begin(), dec.eigenvalues.end(), inv.begin(), [](double v) { return 1.0 / v; });
    return dec.rebuild(inv);
}

inline HermitianMatrix psd_inverse(const HermitianMatrix& a, double floor) { return psd_inverse(spectral_decompose(a), floor); }

inline HermitianMatrix psd_inverse(const HermitianMatrix& a) {
    const auto dec = spectral_decompose(a);
    return psd_inverse(dec, default_inverse_floor(dec));
}

inline HermitianMatrix psd_sqrt(const SpectralDecomposition& dec) {
    auto values = detail::clamp_psd_spectrum(dec, "psd_sqrt");
    for (double& v : values)
        v = std::sqrt(v);
    return dec.rebuild(values);
}

inline HermitianMatrix psd_sqrt(const HermitianMatrix& a) { return psd_sqrt(spectral_decompose(a)); }

/// A^{-1/2} for positive definite A.
inline HermitianMatrix psd_inverse_sqrt(const SpectralDecomposition& dec, double floor) {
    detail::require_floor(dec, floor, "psd_inverse_sqrt");
    std::vector<double> values(dec.eigenvalues.size());
    std::transform(dec.eigenvalues.begin(), dec.eigenvalues.end(), values.begin(),
                   [](double v) { return 1.0 / std::sqrt(v); });
    return dec.rebuild(values);
}

inline HermitianMatrix psd_inverse_sqrt(const HermitianMatrix& a) {
    const auto dec = spectral_decompose(a);
    return psd_inverse_sqrt(dec, default_inverse_floor(dec));
}

/// X^H H X, hermitized.
inline HermitianMatrix congruence(const Matrix& x, const HermitianMatrix& h) {
    if (x.rows() != h.dim())
        throw dimension_error("congruence: shape mismatch");
    return HermitianMatrix(x.adjoint() * h.matrix() * x);
}

/// S H S for Hermitian S, hermitized.
inline HermitianMatrix sandwich(const HermitianMatrix& s, const HermitianMatrix& h) {
    HermitianMatrix::check_same_dim(s, h);
    return HermitianMatrix(s.matrix() * h.matrix() * s.matrix());
}

/// Largest singular value.
inline double operator_norm(const Matrix& k) {
    const auto gram = HermitianMatrix(k.adjoint() * k);
    return std::sqrt(std::max(0.0, spectral_decompose(gram).max_eigenvalue()));
}

inline bool is_positive_definite(const HermitianMatrix& a, double rel_floor = 1e-12) {
    const auto dec = spectral_decompose(a);
    return dec.min_eigenvalue() > rel_floor * std::max(1.0, dec.spectral_radius());
}

} // namespace logsum
