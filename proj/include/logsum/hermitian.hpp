#pragma once

#include "logsum/errors.hpp"
#include "logsum/jacobi.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace logsum {

/// Largest absolute entry.
inline double max_norm(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Dense self-adjoint matrix. Construction takes the Hermitian part (M + M^H) / 2,
/// which is an exact fixed point on inputs that are already Hermitian.
class HermitianMatrix {
public:
    HermitianMatrix() = default;

    explicit HermitianMatrix(const Matrix& m) {
        if (m.rows() != m.cols())
            throw dimension_error("HermitianMatrix: matrix must be square, got " + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()));
        if (m.rows() < 1)
            throw dimension_error("HermitianMatrix: dimension must be at least 1");
        if (!m.allFinite())
            throw domain_error("HermitianMatrix: entries must be finite");
        data_ = (m + m.adjoint()) * 0.5;
    }

    static HermitianMatrix identity(Eigen::Index n) { return HermitianMatrix(Matrix::Identity(n, n)); }
    static HermitianMatrix zero(Eigen::Index n) { return HermitianMatrix(Matrix::Zero(n, n)); }

    static HermitianMatrix diagonal(std::span<const double> d) {
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
        for (std::size_t i = 0; i < d.size(); ++i)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
        return HermitianMatrix(m);
    }
    static HermitianMatrix diagonal(std::initializer_list<double> d) {
        return diagonal(std::span<const double>(d.begin(), d.size()));
    }

    [[nodiscard]] Eigen::Index dim() const noexcept { return data_.rows(); }
    [[nodiscard]] const Matrix& matrix() const noexcept { return data_; }
    [[nodiscard]] Complex operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }
    [[nodiscard]] double trace() const { return data_.trace().real(); }
    [[nodiscard]] double max_norm() const { return logsum::max_norm(data_); }

    friend HermitianMatrix operator+(const HermitianMatrix& x, const HermitianMatrix& y) {
        check_same_dim(x, y);
        return HermitianMatrix(x.data_ + y.data_);
    }
    friend HermitianMatrix operator-(const HermitianMatrix& x, const HermitianMatrix& y) {
        check_same_dim(x, y);
        return HermitianMatrix(x.data_ - y.data_);
    }
    friend HermitianMatrix operator*(double s, const HermitianMatrix& x) { return HermitianMatrix(s * x.data_); }

    static void check_same_dim(const HermitianMatrix& x, const HermitianMatrix& y) {
        if (x.dim() != y.dim())
            throw dimension_error("dimension mismatch: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
    }

private:
    Matrix data_;
};

/// U diag(eigenvalues) U^H with eigenvalues ascending.
struct SpectralDecomposition {
    Matrix unitary;
    std::vector<double> eigenvalues;

    [[nodiscard]] Eigen::Index dim() const noexcept { return unitary.rows(); }
    [[nodiscard]] double min_eigenvalue() const { return eigenvalues.front(); }
    [[nodiscard]] double max_eigenvalue() const { return eigenvalues.back(); }
    [[nodiscard]] double spectral_radius() const {
        return std::max(std::abs(eigenvalues.front()), std::abs(eigenvalues.back()));
    }

    /// U diag(values) U^H for a replacement eigenvalue list.
    [[nodiscard]] HermitianMatrix rebuild(std::span<const double> values) const {
        Eigen::VectorXcd d(static_cast<Eigen::Index>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i)
            d(static_cast<Eigen::Index>(i)) = values[i];
        return HermitianMatrix(unitary * d.asDiagonal() * unitary.adjoint());
    }

    [[nodiscard]] HermitianMatrix reconstruct() const { return rebuild(eigenvalues); }
};

} // namespace logsum
