#include "logsum/harness/generators.hpp"
#include "logsum/loewner_ineq.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace logsum;

namespace {

const auto kSqrt = OperatorFunctionSpec::power(0.5);

MatrixFamily scalars(const std::vector<double>& v) {
    std::vector<HermitianMatrix> out;
    for (double x : v)
        out.push_back(HermitianMatrix::diagonal({x}));
    return MatrixFamily(std::move(out));
}

double entry(const HermitianMatrix& h) { return h(0, 0).real(); }

} // namespace

TEST(MatrixFamilyType, Invariants) {
    EXPECT_THROW(MatrixFamily(std::vector<HermitianMatrix>{}), dimension_error);
    EXPECT_THROW(MatrixFamily({HermitianMatrix::identity(2), HermitianMatrix::identity(3)}), dimension_error);
    const auto fam = MatrixFamily({HermitianMatrix::identity(2), HermitianMatrix::diagonal({1, 3})});
    EXPECT_EQ(fam.size(), 2u);
    EXPECT_NEAR(fam.sum()(1, 1).real(), 4.0, 1e-15);
}

TEST(Perspective, ScalarAndCommutingValues) {
    EXPECT_NEAR(entry(perspective(kSqrt, HermitianMatrix::diagonal({4}), HermitianMatrix::diagonal({9}))), 6.0, 1e-14);
    // W_f(a, b) = b / f(b / a)
    EXPECT_NEAR(entry(inverse_perspective(kSqrt, HermitianMatrix::diagonal({4}), HermitianMatrix::diagonal({9}))), 6.0,
                1e-14);
    EXPECT_NEAR(entry(inverse_perspective(kSqrt, HermitianMatrix::diagonal({1}), HermitianMatrix::diagonal({4}))), 2.0,
                1e-14);
}

TEST(HansenJensen, IdentityAndZeroContraction) {
    harness::Rng rng(51);
    const auto x = harness::random_psd(rng, 4);
    auto v = hansen_jensen_residual(kSqrt, Matrix::Identity(4, 4), x);
    EXPECT_NEAR(v.residual_min_eigenvalue, 0.0, 1e-12);
    EXPECT_TRUE(v.holds);
    v = hansen_jensen_residual(kSqrt, Matrix::Zero(4, 4), x);
    EXPECT_NEAR(v.residual_min_eigenvalue, 0.0, 1e-15);
    EXPECT_TRUE(v.holds);
}

TEST(HansenJensen, RandomContractionsHold) {
    harness::Rng rng(53);
    for (int t = 0; t < 100; ++t) {
        const auto n = rng.integer(1, 6);
        const auto k = harness::random_contraction(rng, n);
        const auto x = harness::random_psd(rng, n);
        EXPECT_TRUE(hansen_jensen_residual(kSqrt, k, x, 1e-8).holds);
        EXPECT_TRUE(hansen_jensen_residual(OperatorFunctionSpec::power(rng.uniform(1.0, 2.0)), k, x, 1e-8).holds);
    }
}

TEST(HansenJensen, Errors) {
    const auto x = HermitianMatrix::identity(2);
    EXPECT_THROW(hansen_jensen_residual(kSqrt, 2.0 * Matrix::Identity(2, 2), x), precondition_error);
    EXPECT_THROW(hansen_jensen_residual(OperatorFunctionSpec::log(), Matrix::Identity(2, 2), x), domain_error);
    EXPECT_THROW(hansen_jensen_residual(kSqrt, Matrix::Identity(2, 2), HermitianMatrix::diagonal({-1, 1})), domain_error);
    EXPECT_THROW(hansen_jensen_residual(OperatorFunctionSpec::power(0.5, -1.0), Matrix::Identity(2, 2), x),
                 precondition_error);
    EXPECT_THROW(hansen_jensen_residual(kSqrt, Matrix::Identity(3, 3), x), dimension_error);
}

TEST(PerspectiveSum, SingleMemberIsEquality) {
    harness::Rng rng(57);
    for (int t = 0; t < 30; ++t) {
        const auto n = rng.integer(1, 6);
        const auto fam = harness::random_expansive_families(rng, 1, n);
        const auto r = perspective_sum_residual(kSqrt, fam.A, fam.B);
        EXPECT_LE(std::abs(r.verdict.residual_min_eigenvalue), 1e-10);
        EXPECT_LE(r.verdict.residual_norm, 1e-10 * r.verdict.scale);
    }
}

TEST(PerspectiveSum, DiagonalReducesToScalarForm) {
    const std::vector<double> a{1.5, 2.0}, b{3.0, 0.5};
    const auto r = perspective_sum_residual(kSqrt, scalars(a), scalars(b));
    const double gap = scalar_forms::perspective_sum_gap([](double t) { return std::sqrt(t); }, a, b);
    EXPECT_NEAR(gap, 3.5 - 3.1213203435596425732, 1e-15);
    EXPECT_NEAR(r.verdict.residual_min_eigenvalue, gap, 1e-14);
    EXPECT_TRUE(r.verdict.holds);
}

TEST(PerspectiveSum, IdentityDiscrepancyVanishesOnlyForIdentityA) {
    harness::Rng rng(59);
    const auto n = 3;
    std::vector<HermitianMatrix> as{HermitianMatrix::identity(n), HermitianMatrix::identity(n)};
    std::vector<HermitianMatrix> bs{harness::random_pd(rng, n), harness::random_pd(rng, n)};
    auto r = perspective_sum_residual(kSqrt, MatrixFamily(as), MatrixFamily(bs));
    EXPECT_LE(r.identity_discrepancy, 1e-12);
    ASSERT_TRUE(r.summed_image.has_value());
    const auto fam = harness::random_expansive_families(rng, 2, n);
    r = perspective_sum_residual(kSqrt, fam.A, fam.B);
    EXPECT_GT(r.identity_discrepancy, 1e-6);
}

TEST(PerspectiveSum, ExpansiveFamiliesHold) {
    harness::Rng rng(61);
    for (int t = 0; t < 100; ++t) {
        const auto fam = harness::random_expansive_families(rng, static_cast<std::size_t>(rng.integer(1, 4)),
                                                            rng.integer(1, 5));
        EXPECT_TRUE(perspective_sum_residual(kSqrt, fam.A, fam.B).verdict.holds);
        EXPECT_TRUE(perspective_sum_residual(OperatorFunctionSpec::log(), fam.A, fam.B).verdict.holds);
    }
}

TEST(PerspectiveSum, Errors) {
    const auto one = scalars({0.5, 0.5});
    EXPECT_THROW(perspective_sum_residual(kSqrt, one, one), precondition_error);
    EXPECT_NO_THROW(perspective_sum_residual(kSqrt, one, one, {1e-9, false}));
    EXPECT_THROW(perspective_sum_residual(OperatorFunctionSpec::power(2.0), scalars({2, 2}), scalars({1, 1})),
                 precondition_error);
    EXPECT_THROW(perspective_sum_residual(kSqrt, scalars({2, 2}), scalars({0, 1})), precondition_error);
    EXPECT_THROW(perspective_sum_residual(kSqrt, scalars({2, 2}), scalars({1})), dimension_error);
}

TEST(OperatorShannon, DiagonalExample) {
    const auto as = MatrixFamily({HermitianMatrix::identity(2), HermitianMatrix::identity(2)});
    const auto bs = MatrixFamily({HermitianMatrix::diagonal({0.5, 1.5}), HermitianMatrix::diagonal({1.5, 0.5})});
    const auto v = operator_shannon_residual(as, bs, OperatorFunctionSpec::log());
    EXPECT_NEAR(v.residual_min_eigenvalue, 0.28768207245178092744, 1e-14);
    EXPECT_TRUE(v.holds);
}

TEST(OperatorShannon, BalancedFamiliesHold) {
    harness::Rng rng(67);
    for (int t = 0; t < 50; ++t) {
        const auto fam = harness::random_balanced_families(rng, static_cast<std::size_t>(rng.integer(1, 4)),
                                                           rng.integer(1, 5));
        EXPECT_TRUE(operator_shannon_residual(fam.A, fam.B, OperatorFunctionSpec::log()).holds);
    }
}

TEST(OperatorShannon, Errors) {
    const auto as = scalars({1, 1});
    EXPECT_THROW(operator_shannon_residual(as, scalars({1, 2}), OperatorFunctionSpec::log()), precondition_error);
    EXPECT_THROW(operator_shannon_residual(as, as, kSqrt), precondition_error);
}

TEST(QuadraticInverseSum, EqualityWhenXEqualsA) {
    harness::Rng rng(71);
    const auto fam = harness::random_pd_families(rng, 3, 4);
    std::vector<Matrix> xs;
    for (const auto& a : fam.A.members)
        xs.push_back(a.matrix());
    const auto v = quadratic_inverse_sum_residual(xs, fam.A);
    EXPECT_LE(std::abs(v.residual_min_eigenvalue), 1e-10 * v.scale);
    EXPECT_TRUE(v.holds);
}

TEST(QuadraticInverseSum, RandomHoldsAndErrors) {
    harness::Rng rng(73);
    for (int t = 0; t < 50; ++t) {
        const auto n = rng.integer(1, 5);
        const auto fam = harness::random_pd_families(rng, 3, n);
        std::vector<Matrix> xs;
        for (int i = 0; i < 3; ++i)
            xs.push_back(harness::gaussian_matrix(rng, n, n));
        EXPECT_TRUE(quadratic_inverse_sum_residual(xs, fam.A).holds);
    }
    EXPECT_THROW(quadratic_inverse_sum_residual({Matrix::Identity(2, 2)}, scalars({1})), dimension_error);
}

TEST(InverseMean, ScalarReduction) {
    const std::vector<double> a{1, 4}, b{2, 3};
    const auto [lhs, rhs] = scalar_forms::inverse_mean([](double t) { return std::sqrt(t); }, a, b);
    EXPECT_NEAR(lhs, 2.1706013344398024152, 1e-14);
    EXPECT_NEAR(rhs, 5.0, 1e-14);
    const auto v = inverse_mean_residual(kSqrt, scalars(a), scalars(b));
    EXPECT_NEAR(v.residual_min_eigenvalue, rhs - lhs, 1e-12);
    EXPECT_TRUE(v.holds);
}

TEST(InverseMean, RandomFamiliesHold) {
    harness::Rng rng(79);
    for (int t = 0; t < 50; ++t) {
        const auto fam = harness::random_pd_families(rng, static_cast<std::size_t>(rng.integer(1, 4)), rng.integer(1, 4));
        EXPECT_TRUE(inverse_mean_residual(kSqrt, fam.A, fam.B).holds);
    }
}

TEST(SandwichedInverseMean, ScalarReduction) {
    const std::vector<double> a{1, 4}, b{2, 3};
    const auto [lhs, rhs] = scalar_forms::sandwiched_inverse_mean([](double t) { return std::sqrt(t); }, a, b);
    EXPECT_NEAR(lhs, 15.270620022924113397, 1e-13);
    EXPECT_NEAR(rhs, 22.5, 1e-13);
    const auto v = sandwiched_inverse_mean_residual(kSqrt, scalars(a), scalars(b));
    EXPECT_NEAR(v.residual_min_eigenvalue, rhs - lhs, 1e-12);
}

TEST(SandwichedInverseMean, ScalarCounterexampleFails) {
    const std::vector<double> a{1, 100}, b{1, 1};
    const auto [lhs, rhs] = scalar_forms::sandwiched_inverse_mean([](double t) { return std::sqrt(t); }, a, b);
    EXPECT_NEAR(lhs, 1001.0, 1e-11);
    EXPECT_NEAR(rhs, 859.86655941488967757, 1e-10);
    const auto v = sandwiched_inverse_mean_residual(kSqrt, scalars(a), scalars(b));
    EXPECT_NEAR(v.residual_min_eigenvalue, rhs - lhs, 1e-9);
    EXPECT_FALSE(v.holds);
}

TEST(NestedInverseMean, NearEqualityAndOrder) {
    const auto a = HermitianMatrix::diagonal({1, 2});
    const auto b = HermitianMatrix::diagonal({3, 4});
    const auto v = nested_inverse_mean_residual(kSqrt, a, b, a, b + 1e-9 * HermitianMatrix::identity(2));
    EXPECT_NEAR(v.residual_min_eigenvalue, 0.0, 1e-8);
    EXPECT_TRUE(v.holds);
    harness::Rng rng(83);
    for (int t = 0; t < 50; ++t) {
        const auto inst = harness::random_nested(rng, rng.integer(1, 5));
        EXPECT_TRUE(nested_inverse_mean_residual(kSqrt, inst.A_i, inst.B_i, inst.A, inst.B).holds);
    }
}

TEST(NestedInverseMean, Errors) {
    const auto i2 = HermitianMatrix::identity(2);
    EXPECT_THROW(nested_inverse_mean_residual(kSqrt, 2.0 * i2, i2, i2, 2.0 * i2), precondition_error);
    EXPECT_THROW(nested_inverse_mean_residual(kSqrt, i2, i2, i2, i2), precondition_error);
    EXPECT_THROW(nested_inverse_mean_residual(OperatorFunctionSpec::power(2.0), i2, i2, i2, 2.0 * i2),
                 precondition_error);
}
