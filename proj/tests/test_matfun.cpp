#include "logsum/harness/generators.hpp"
#include "logsum/matfun.hpp"
#include "logsum/matrix_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace logsum;

namespace {

double max_diff(const Matrix& x, const Matrix& y) { return max_norm(x - y); }

Matrix rotation(double theta) {
    Matrix u(2, 2);
    u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return u;
}

} // namespace

TEST(Hermitize, TakesHermitianPart) {
    Matrix m(2, 2);
    m << Complex(1, 0), Complex(2, 1), Complex(0, 0), Complex(3, 0);
    const auto h = hermitize(m);
    EXPECT_EQ(h(0, 1), Complex(1, 0.5));
    EXPECT_EQ(h(1, 0), Complex(1, -0.5));
    EXPECT_EQ(hermitize(h.matrix()).matrix(), h.matrix());
}

TEST(Hermitize, Errors) {
    EXPECT_THROW(hermitize(Matrix::Zero(2, 3)), dimension_error);
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = Complex(NAN, 0);
    EXPECT_THROW(hermitize(bad), domain_error);
}

TEST(SpectralDecompose, Examples) {
    auto dec = spectral_decompose(HermitianMatrix::diagonal({3, 1}));
    EXPECT_NEAR(dec.eigenvalues[0], 1.0, 1e-15);
    EXPECT_NEAR(dec.eigenvalues[1], 3.0, 1e-15);
    Matrix m(2, 2);
    m << 2, 1, 1, 2;
    dec = spectral_decompose(HermitianMatrix(m));
    EXPECT_NEAR(dec.eigenvalues[0], 1.0, 1e-14);
    EXPECT_NEAR(dec.eigenvalues[1], 3.0, 1e-14);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    dec = spectral_decompose(HermitianMatrix(m));
    EXPECT_NEAR(dec.eigenvalues[0], -1.0, 1e-14);
    EXPECT_NEAR(dec.eigenvalues[1], 1.0, 1e-14);
}

TEST(SpectralDecompose, ReconstructsRandomMatrices) {
    harness::Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const auto n = rng.integer(1, 12);
        const HermitianMatrix a(harness::gaussian_matrix(rng, n, n));
        const auto dec = spectral_decompose(a);
        EXPECT_LE(unitarity_defect(dec.unitary), 1e-12);
        EXPECT_LE(max_diff(dec.reconstruct().matrix(), a.matrix()), 1e-12 * std::max(1.0, a.max_norm()));
        EXPECT_TRUE(std::is_sorted(dec.eigenvalues.begin(), dec.eigenvalues.end()));
    }
}

TEST(SpectralDecompose, SweepCapRaisesConvergenceError) {
    Matrix m(2, 2);
    m << 2, 1, 1, 2;
    EXPECT_THROW(jacobi_eigen(m, 0), convergence_error);
}

TEST(ApplyFunction, Examples) {
    auto r = apply_function(FunctionSpec::log(), HermitianMatrix::diagonal({1, std::numbers::e}));
    EXPECT_NEAR(r(0, 0).real(), 0.0, 1e-15);
    EXPECT_NEAR(r(1, 1).real(), 1.0, 1e-15);
    r = apply_function(FunctionSpec::power(2), HermitianMatrix::diagonal({2, 3}));
    EXPECT_NEAR(r(0, 0).real(), 4.0, 1e-14);
    EXPECT_NEAR(r(1, 1).real(), 9.0, 1e-14);
    EXPECT_THROW(apply_function(FunctionSpec::log(), HermitianMatrix::diagonal({-1, 1})), domain_error);
}

TEST(ApplyFunction, HomomorphismAndTrace) {
    harness::Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        const auto n = rng.integer(1, 8);
        const auto a = harness::random_pd(rng, n);
        const auto dec = spectral_decompose(a);
        const auto sq = apply_function(FunctionSpec::power(2), a);
        EXPECT_LE(max_diff(sq.matrix(), a.matrix() * a.matrix()), 1e-11 * std::max(1.0, sq.max_norm()));
        const auto lg = apply_function(FunctionSpec::log(), a);
        double want = 0.0;
        for (double v : dec.eigenvalues)
            want += std::log(v);
        EXPECT_NEAR(lg.trace(), want, 1e-11 * std::max(1.0, std::abs(want)));
        // unitary similarity commutes with f
        const Matrix u = harness::haar_unitary(rng, n);
        const auto lhs = apply_function(FunctionSpec::log(), congruence(u, a));
        const auto rhs = congruence(u, lg);
        EXPECT_LE(max_diff(lhs.matrix(), rhs.matrix()), 1e-11);
    }
}

TEST(ApplyFunction, PsdRoundOffBand) {
    // rank-one matrix; sqrt must not amplify round-off on the zero eigenvalue
    Matrix v(3, 1);
    v << 1, Complex(0, 2), -1;
    const HermitianMatrix a(v * v.adjoint());
    const auto r = apply_function_psd(FunctionSpec::power(0.5), a);
    EXPECT_LE(max_diff((r.matrix() * r.matrix()), a.matrix()), 1e-12);
    EXPECT_THROW(apply_function_psd(FunctionSpec::power(0.5), HermitianMatrix::diagonal({-1e-3, 1})), domain_error);
}

TEST(LoewnerLeq, Examples) {
    auto v = loewner_leq(HermitianMatrix::identity(2), 2.0 * HermitianMatrix::identity(2));
    EXPECT_TRUE(v.holds);
    EXPECT_NEAR(v.residual_min_eigenvalue, 1.0, 1e-15);
    v = loewner_leq(HermitianMatrix::diagonal({1, 3}), HermitianMatrix::diagonal({2, 2}));
    EXPECT_FALSE(v.holds);
    EXPECT_NEAR(v.residual_min_eigenvalue, -1.0, 1e-15);
    EXPECT_TRUE(loewner_leq(HermitianMatrix::identity(3), HermitianMatrix::identity(3)).holds);
    EXPECT_THROW(loewner_leq(HermitianMatrix::identity(2), HermitianMatrix::identity(3)), dimension_error);
}

TEST(LoewnerLeq, ToleranceScalesWithMagnitude) {
    const auto big = 1e6 * HermitianMatrix::identity(2);
    const auto slightly_less = big - 1e-4 * HermitianMatrix::identity(2);
    EXPECT_TRUE(loewner_leq(big, slightly_less, 1e-9).holds);
    EXPECT_FALSE(loewner_leq(big, slightly_less, 1e-12).holds);
}

TEST(MakeCommutingPair, Rotation) {
    const std::vector<double> la{1, 2}, lb{3, 5};
    const auto [a, b] = make_commuting_pair(rotation(std::numbers::pi / 4), la, lb);
    EXPECT_NEAR(a(0, 0).real(), 1.5, 1e-15);
    EXPECT_NEAR(a(0, 1).real(), -0.5, 1e-15);
    EXPECT_NEAR(b(0, 0).real(), 4.0, 1e-15);
    EXPECT_NEAR(b(0, 1).real(), -1.0, 1e-15);
    EXPECT_TRUE(commutes(a, b));
    EXPECT_LE(commutator_norm(a, b), 1e-14);
}

TEST(MakeCommutingPair, Errors) {
    const std::vector<double> la{1, 2}, lb{3, 5}, shortl{1};
    Matrix notu = Matrix::Identity(2, 2);
    notu(0, 1) = 0.1;
    EXPECT_THROW(make_commuting_pair(notu, la, lb), precondition_error);
    EXPECT_THROW(make_commuting_pair(Matrix::Identity(2, 2), la, shortl), dimension_error);
}

TEST(PsdInverse, Examples) {
    const auto inv = psd_inverse(HermitianMatrix::diagonal({2, 4}));
    EXPECT_NEAR(inv(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(inv(1, 1).real(), 0.25, 1e-15);
    EXPECT_THROW(psd_inverse(HermitianMatrix::diagonal({0, 1})), singularity_error);
    EXPECT_THROW(psd_inverse(HermitianMatrix::diagonal({1e-3, 1}), 1e-2), singularity_error);
    EXPECT_NO_THROW(psd_inverse(HermitianMatrix::diagonal({1e-3, 1}), 1e-4));
}

TEST(PsdSqrt, Examples) {
    const auto r = psd_sqrt(HermitianMatrix::diagonal({4, 9}));
    EXPECT_NEAR(r(0, 0).real(), 2.0, 1e-15);
    EXPECT_NEAR(r(1, 1).real(), 3.0, 1e-15);
    EXPECT_NO_THROW(psd_sqrt(HermitianMatrix::diagonal({-1e-14, 1})));
    EXPECT_THROW(psd_sqrt(HermitianMatrix::diagonal({-1e-3, 1})), domain_error);
}

TEST(PsdInverse, SqrtAndInverseInvariants) {
    harness::Rng rng(13);
    for (int t = 0; t < 50; ++t) {
        const auto n = rng.integer(1, 10);
        const auto a = harness::random_pd(rng, n);
        const auto s = psd_sqrt(a);
        EXPECT_LE(max_diff(s.matrix() * s.matrix(), a.matrix()), 1e-11 * a.max_norm());
        const auto inv = psd_inverse(a);
        EXPECT_LE(max_diff(inv.matrix() * a.matrix(), Matrix::Identity(n, n)), 1e-10);
        const auto isq = psd_inverse_sqrt(a);
        EXPECT_LE(max_diff(isq.matrix() * isq.matrix(), inv.matrix()), 1e-10 * std::max(1.0, inv.max_norm()));
    }
}

TEST(ApplyFunction, LogOfCommutingQuotient) {
    harness::Rng rng(21);
    for (int t = 0; t < 30; ++t) {
        const auto pair = harness::random_commuting_pair(rng, rng.integer(1, 6), 0.1, 10.0);
        const auto quotient = hermitize(pair.A.matrix() * psd_inverse(pair.B).matrix());
        const auto lhs = apply_function(FunctionSpec::log(), quotient);
        const auto rhs = apply_function(FunctionSpec::log(), pair.A) - apply_function(FunctionSpec::log(), pair.B);
        EXPECT_LE(max_diff(lhs.matrix(), rhs.matrix()), 1e-10);
    }
}

TEST(OperatorNorm, Examples) {
    EXPECT_NEAR(operator_norm(Matrix::Identity(3, 3)), 1.0, 1e-15);
    Matrix k(2, 2);
    k << 0, 2, 0, 0;
    EXPECT_NEAR(operator_norm(k), 2.0, 1e-14);
}

TEST(MatrixIo, RoundTripIsExact) {
    harness::Rng rng(29);
    for (int t = 0; t < 20; ++t) {
        const auto n = rng.integer(1, 6);
        const Matrix m = harness::gaussian_matrix(rng, n, n) * 1e3;
        const Matrix back = io::parse_matrix(io::write_matrix(m));
        EXPECT_EQ(back, m);
    }
}

TEST(MatrixIo, Errors) {
    EXPECT_THROW(io::parse_matrix("{\"n\": 2, \"re\": [[1, 0]], \"im\": [[0, 0], [0, 0]]}"), dimension_error);
    EXPECT_THROW(io::parse_matrix("{\"n\": 1, \"re\": [[\"x\"]], \"im\": [[0]]}"), domain_error);
    EXPECT_THROW(io::parse_matrix("{\"n\": 1"), domain_error);
    EXPECT_THROW(io::parse_matrix("{\"re\": [[1]], \"im\": [[0]]}"), dimension_error);
    EXPECT_THROW(io::load_document("/nonexistent/path.json"), precondition_error);
}
