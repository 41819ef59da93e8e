#pragma once

// Cyclic Jacobi eigensolver for complex Hermitian matrices.
//
// Each rotation first removes the phase of the pivot a_pq (so the 2x2 block
// becomes real symmetric) and then applies the classical real rotation with
// t = tan(phi) chosen as the smaller root. The combined unitary is
//
//     J = [ c              s ]
//         [ -s conj(e)  c conj(e) ],   e = a_pq / |a_pq|,
//
// acting on rows/columns (p, q), and A <- J^H A J, V <- V J.

#include "logsum/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace logsum {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct JacobiResult {
    Matrix vectors;              ///< columns are orthonormal eigenvectors
    std::vector<double> values;  ///< ascending
    int sweeps = 0;
};

inline constexpr int default_jacobi_sweeps = 100;

namespace detail {

inline double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j)
                s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace detail

/// Eigen-decomposition of a Hermitian matrix. Only the Hermitian part of the
/// input is read implicitly (the caller is expected to pass a hermitized
/// matrix). Throws convergence_error once max_sweeps is exceeded.
inline JacobiResult jacobi_eigen(const Matrix& input, int max_sweeps = default_jacobi_sweeps) {
    const Eigen::Index n = input.rows();
    if (n != input.cols())
        throw dimension_error("jacobi_eigen: matrix must be square");

    Matrix a = input;
    Matrix v = Matrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        a(i, i) = Complex(a(i, i).real(), 0.0);

    const double frob = a.norm();
    const double target = std::numeric_limits<double>::epsilon() * frob;

    int sweep = 0;
    for (;; ++sweep) {
        const double off = detail::off_diagonal_norm(a);
        if (off <= target || off == 0.0)
            break;
        if (sweep >= max_sweeps) {
            std::ostringstream os;
            os.precision(6);
            os << "jacobi_eigen: no convergence after " << max_sweeps << " sweeps (n = " << n
               << ", off-diagonal norm " << off << ", Frobenius norm " << frob << ")";
            throw convergence_error(os.str());
        }

        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0)
                    continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Negligible pivots are dropped once the sweep has settled.
                if (sweep > 3 && std::abs(app) + 100.0 * r == std::abs(app) && std::abs(aqq) + 100.0 * r == std::abs(aqq)) {
                    a(p, q) = a(q, p) = Complex(0.0, 0.0);
                    continue;
                }

                const Complex e = apq / r;
                const double theta = (aqq - app) / (2.0 * r);
                double t;
                if (std::abs(theta) > 1e150)
                    t = 0.5 / theta;
                else
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const Complex jpp(c, 0.0);
                const Complex jpq(s, 0.0);
                const Complex jqp = -s * std::conj(e);
                const Complex jqq = c * std::conj(e);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = a(q, p) = Complex(0.0, 0.0);
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

    JacobiResult out;
    out.sweeps = sweep;
    out.vectors.resize(n, n);
    out.values.resize(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.values[static_cast<std::size_t>(k)] = a(src, src).real();
        out.vectors.col(k) = v.col(src);
    }
    return out;
}

} // namespace logsum
