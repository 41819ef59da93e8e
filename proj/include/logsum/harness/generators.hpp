#pragma once

// Random instances that satisfy each check's preconditions by construction.

#include "logsum/harness/rng.hpp"
#include "logsum/hermitian.hpp"
#include "logsum/loewner_ineq.hpp"
#include "logsum/matfun.hpp"
#include "logsum/scalar_ineq.hpp"
#include "logsum/trace_ineq.hpp"

#include <Eigen/QR>

#include <cmath>
#include <utility>
#include <vector>

namespace logsum::harness {

inline Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    Matrix z(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            z(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
    return z;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal moved into Q.
inline Matrix haar_unitary(Rng& rng, Eigen::Index n) {
    const Matrix z = gaussian_matrix(rng, n, n);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double mod = std::abs(r(j, j));
        if (mod > 0.0)
            q.col(j) *= r(j, j) / mod;
    }
    return q;
}

inline std::vector<double> uniform_values(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v)
        x = rng.uniform_open_closed(lo, hi);
    return v;
}

/// V diag(lambda) V^H with Haar V and lambda uniform on (lo, hi].
inline HermitianMatrix random_spectrum_matrix(Rng& rng, Eigen::Index n, double lo, double hi) {
    const auto values = uniform_values(rng, static_cast<std::size_t>(n), lo, hi);
    return SpectralDecomposition{haar_unitary(rng, n), {}}.rebuild(values);
}

inline HermitianMatrix random_pd(Rng& rng, Eigen::Index n, double lo = 0.1, double hi = 10.0) {
    return random_spectrum_matrix(rng, n, lo, hi);
}

/// I + Q Q^H; every eigenvalue is at least 1.
inline HermitianMatrix random_expansive(Rng& rng, Eigen::Index n) {
    const Matrix q = gaussian_matrix(rng, n, n) * rng.uniform(0.2, 1.5);
    return HermitianMatrix(Matrix::Identity(n, n) + q * q.adjoint());
}

/// Positive definite with spectrum in (lo, 1].
inline HermitianMatrix random_contractive(Rng& rng, Eigen::Index n, double lo = 0.02) {
    return random_spectrum_matrix(rng, n, lo, 1.0);
}

/// U diag(sigma) W^H with singular values in [0, 1].
inline Matrix random_contraction(Rng& rng, Eigen::Index n) {
    Eigen::VectorXcd s(n);
    for (Eigen::Index i = 0; i < n; ++i)
        s(i) = rng.chance(0.1) ? 1.0 : rng.uniform(0.0, 1.0);
    return haar_unitary(rng, n) * s.asDiagonal() * haar_unitary(rng, n).adjoint();
}

/// Positive semidefinite, occasionally rank deficient.
inline HermitianMatrix random_psd(Rng& rng, Eigen::Index n, double hi = 10.0) {
    std::vector<double> v = uniform_values(rng, static_cast<std::size_t>(n), 0.0, hi);
    if (n > 1 && rng.chance(0.2))
        v[static_cast<std::size_t>(rng.integer(0, n - 1))] = 0.0;
    return SpectralDecomposition{haar_unitary(rng, n), {}}.rebuild(v);
}

/// Probability vector; with `allow_zero` an entry is sometimes exactly 0.
inline std::vector<double> random_probabilities(Rng& rng, std::size_t n, bool allow_zero) {
    std::vector<double> p(n);
    double total = 0.0;
    for (double& x : p) {
        x = -std::log(rng.uniform_open_closed(0.0, 1.0));
        total += x;
    }
    if (allow_zero && n > 1 && rng.chance(0.2)) {
        auto& z = p[static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1))];
        total -= z;
        z = 0.0;
    }
    for (double& x : p)
        x /= total;
    return p;
}

inline DensityMatrix random_density(Rng& rng, Eigen::Index n) {
    const auto p = random_probabilities(rng, static_cast<std::size_t>(n), true);
    return DensityMatrix(SpectralDecomposition{haar_unitary(rng, n), {}}.rebuild(p));
}

/// Eigenvalue list on (lo, hi] with occasional repeats, which exercises the
/// clustered branch of joint diagonalization.
inline std::vector<double> spectrum_with_repeats(Rng& rng, std::size_t n, double lo, double hi) {
    auto v = uniform_values(rng, n, lo, hi);
    if (n > 1 && rng.chance(0.25))
        v[1] = v[0];
    return v;
}

struct CommutingPair {
    HermitianMatrix A;
    HermitianMatrix B;
};

inline CommutingPair random_commuting_pair(Rng& rng, Eigen::Index n, double lo = 0.05, double hi = 10.0) {
    const auto u = haar_unitary(rng, n);
    const auto la = spectrum_with_repeats(rng, static_cast<std::size_t>(n), lo, hi);
    const auto lb = uniform_values(rng, static_cast<std::size_t>(n), lo, hi);
    auto [a, b] = make_commuting_pair(u, la, lb);
    return {std::move(a), std::move(b)};
}

struct DensityPair {
    DensityMatrix rho;
    DensityMatrix sigma;
};

/// Commuting states; sigma has full support so D(rho || sigma) is finite.
inline DensityPair random_commuting_densities(Rng& rng, Eigen::Index n) {
    const auto u = haar_unitary(rng, n);
    const auto p = random_probabilities(rng, static_cast<std::size_t>(n), true);
    const auto s = random_probabilities(rng, static_cast<std::size_t>(n), false);
    auto [r, t] = make_commuting_pair(u, p, s);
    return {DensityMatrix(r), DensityMatrix(t)};
}

struct FamilyPair {
    MatrixFamily A;
    MatrixFamily B;
};

inline MatrixFamily family_of(Rng& rng, std::size_t m, Eigen::Index n, HermitianMatrix (*make)(Rng&, Eigen::Index)) {
    std::vector<HermitianMatrix> members;
    members.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        members.push_back(make(rng, n));
    return MatrixFamily(std::move(members));
}

inline HermitianMatrix pd_default(Rng& rng, Eigen::Index n) { return random_pd(rng, n); }
inline HermitianMatrix contractive_default(Rng& rng, Eigen::Index n) { return random_contractive(rng, n); }

inline FamilyPair random_expansive_families(Rng& rng, std::size_t m, Eigen::Index n) {
    return {family_of(rng, m, n, random_expansive), family_of(rng, m, n, pd_default)};
}

inline FamilyPair random_pd_families(Rng& rng, std::size_t m, Eigen::Index n) {
    return {family_of(rng, m, n, pd_default), family_of(rng, m, n, pd_default)};
}

inline FamilyPair random_contractive_families(Rng& rng, std::size_t m, Eigen::Index n) {
    return {family_of(rng, m, n, contractive_default), family_of(rng, m, n, pd_default)};
}

/// Expansive A_i with B_i = A^{1/2} C_i A^{1/2}, where the C_i are positive
/// definite and sum to I, so that sum B_i = sum A_i = A.
inline FamilyPair random_balanced_families(Rng& rng, std::size_t m, Eigen::Index n) {
    auto A = family_of(rng, m, n, random_expansive);
    const auto D = family_of(rng, m, n, pd_default);
    const auto s_inv_root = psd_inverse_sqrt(D.sum());
    const auto a_root = psd_sqrt(A.sum());
    std::vector<HermitianMatrix> b;
    b.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        b.push_back(sandwich(a_root, sandwich(s_inv_root, D[i])));
    return {std::move(A), MatrixFamily(std::move(b))};
}

struct NestedPair {
    HermitianMatrix A_i, B_i, A, B;
};

/// A = A_i + P with P positive semidefinite, B = B_i + Q with Q positive definite.
inline NestedPair random_nested(Rng& rng, Eigen::Index n) {
    auto A_i = random_pd(rng, n);
    auto B_i = random_pd(rng, n);
    auto A = A_i + random_psd(rng, n, 5.0);
    auto B = B_i + random_pd(rng, n, 0.05, 5.0);
    return {std::move(A_i), std::move(B_i), std::move(A), std::move(B)};
}

inline SequencePair random_sequence_pair(Rng& rng, std::size_t n, double lo = 0.0, double hi = 10.0) {
    return SequencePair(uniform_values(rng, n, lo, hi), uniform_values(rng, n, lo, hi));
}

} // namespace logsum::harness
