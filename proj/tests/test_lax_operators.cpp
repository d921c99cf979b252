#include <cmath>

#include <gtest/gtest.h>

#include "defectbethe/lax_operators.hpp"
#include "generators.hpp"

using namespace defectbethe;

namespace {

std::vector<ModelParameters> families() {
    return {ModelParameters::rational(), ModelParameters::trigonometric(0.3, Regime::Repulsive),
            ModelParameters::trigonometric(0.7, Regime::Repulsive),
            ModelParameters::trigonometric(2.1, Regime::Attractive)};
}

}  // namespace

TEST(Kron, IndexConvention) {
    Mat a = Mat::Zero(2, 2), b = Mat::Zero(3, 3);
    a(0, 1) = 1.0;
    b(2, 0) = 1.0;
    Mat k = kron(a, b);
    ASSERT_EQ(k.rows(), 6);
    EXPECT_EQ(k(0 * 3 + 2, 1 * 3 + 0), cplx(1.0));
    EXPECT_NEAR(max_norm(k), 1.0, 0.0);
}

TEST(Permutation, SwapsFactors) {
    testgen::Gen g(31);
    Vec x = Vec::Random(2), y = Vec::Random(3);
    Vec xy(6), yx(6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) {
            xy(i * 3 + j) = x(i) * y(j);
            yx(j * 2 + i) = x(i) * y(j);
        }
    EXPECT_LT((permutation(2, 3) * xy - yx).norm(), 1e-15);
}

TEST(Embed, MatchesKron) {
    Mat a = Mat::Random(2, 2), b = Mat::Random(3, 3);
    Mat I2 = Mat::Identity(2, 2);
    EXPECT_LT(max_norm(embed(a, {2, 2, 3}, {0}) - kron(a, Mat::Identity(6, 6))), 1e-15);
    EXPECT_LT(max_norm(embed(b, {2, 2, 3}, {2}) - kron(Mat::Identity(4, 4), b)), 1e-15);
    // operator on (0, 2) skipping the middle factor
    Mat ab = kron(a, b);
    Mat e = embed(ab, {2, 2, 3}, {0, 2});
    Mat expect = kron(kron(a, I2), b);
    EXPECT_LT(max_norm(e - expect), 1e-15);
    // listed order decides significance
    Mat ba = kron(b, a);
    EXPECT_LT(max_norm(embed(ba, {2, 2, 3}, {2, 0}) - expect), 1e-15);
    Mat m = Mat::Random(12, 12), m2 = m;
    apply_local_left(m2, ab, {2, 2, 3}, {0, 2});
    EXPECT_LT(max_norm(m2 - e * m), 1e-14);
}

TEST(PartialOps, TransposeAndTrace) {
    Mat a = Mat::Random(2, 2), b = Mat::Random(3, 3);
    EXPECT_LT(max_norm(partial_transpose_aux(kron(a, b)) - kron(a.transpose(), b)), 1e-15);
    EXPECT_LT(max_norm(partial_trace_aux(kron(a, b)) - a.trace() * b), 1e-15);
}

TEST(RMatrix, RegularityRational) {
    Mat R = r_matrix(ModelParameters::rational(), 0.0);
    EXPECT_LT(max_norm(R - kI * permutation(2, 2)), 1e-15);
}

TEST(RMatrix, RegularityTrig) {
    ModelParameters p = ModelParameters::trigonometric(0.3, Regime::Repulsive);
    Mat R = r_matrix(p, 0.0);
    EXPECT_LT(max_norm(R - std::sinh(cplx(0.0, 0.3)) * permutation(2, 2)), 1e-15);
}

TEST(RMatrix, RationalAtOne) {
    Mat R = r_matrix(ModelParameters::rational(), 1.0);
    EXPECT_LT(std::abs(R(0, 0) - cplx(1.0, 1.0)), 1e-15);
    EXPECT_LT(std::abs(R(3, 3) - cplx(1.0, 1.0)), 1e-15);
    EXPECT_LT(std::abs(R(1, 1) - cplx(1.0, 0.0)), 1e-15);
    EXPECT_LT(std::abs(R(1, 2) - kI), 1e-15);
}

TEST(RMatrix, DerivativeFiniteDifference) {
    testgen::Gen g(32);
    for (const auto& p : families()) {
        cplx l = g.complex();
        double h = 1e-6;
        Mat fd = (r_matrix(p, l + h) - r_matrix(p, l - h)) / (2 * h);
        EXPECT_LT(max_norm(fd - r_matrix_derivative(p, l)), 1e-8);
    }
}

TEST(RegularityCheck, Families) {
    EXPECT_LE(regularity_check(ModelParameters::rational()), 1e-14);
    EXPECT_LE(regularity_check(ModelParameters::trigonometric(0.3, Regime::Repulsive)), 1e-14);
    EXPECT_LE(regularity_check(ModelParameters::trigonometric(1.0, Regime::Repulsive)), 1e-14);
}

TEST(DefectLax, SpinHalfIsRMatrix) {
    testgen::Gen g(33);
    for (const auto& p : families()) {
        SpinRepresentation r = build_rep(0.5, p);
        for (int i = 0; i < 5; ++i) {
            cplx l = g.complex();
            EXPECT_LT(max_norm(defect_lax(p, r, l) - r_matrix(p, l)), 1e-14) << p.describe();
        }
    }
}

TEST(DefectLax, SpinOneRationalAtZero) {
    Mat L = defect_lax(ModelParameters::rational(), build_rep(1.0), 0.0);
    ASSERT_EQ(L.rows(), 6);
    EXPECT_LT(std::abs(L(0, 0) - kI * 1.5), 1e-15);
    EXPECT_LT(std::abs(L(1, 1) - kI * 0.5), 1e-15);
    EXPECT_LT(std::abs(L(2, 2) - kI * -0.5), 1e-15);
}

TEST(DefectLax, TrigOffDiagonalBlocks) {
    ModelParameters p = ModelParameters::trigonometric(0.3, Regime::Repulsive);
    SpinRepresentation r = build_rep(1.0, p);
    Mat L = defect_lax(p, r, 0.5);
    cplx c = std::sinh(cplx(0.0, 0.3));
    EXPECT_LT(max_norm(L.topRightCorner(3, 3) - c * r.Sm), 1e-15);
    EXPECT_LT(max_norm(L.bottomLeftCorner(3, 3) - c * r.Sp), 1e-15);
}

TEST(DefectLax, DerivativeFiniteDifference) {
    testgen::Gen g(34);
    for (const auto& p : families()) {
        SpinRepresentation r = build_rep(1.5, p);
        cplx l = g.complex();
        double h = 1e-6;
        Mat fd = (defect_lax(p, r, l + h) - defect_lax(p, r, l - h)) / (2 * h);
        EXPECT_LT(max_norm(fd - defect_lax_derivative(p, r, l)), 1e-7);
    }
}

TEST(YangBaxter, RandomPairsBothFamilies) {
    testgen::Gen g(35);
    for (const auto& p : families())
        for (int i = 0; i < 100; ++i) EXPECT_LE(ybe_residual(p, g.complex(1.0, 0.5), g.complex(1.0, 0.5)), 1e-12);
    ModelParameters p = ModelParameters::trigonometric(0.7, Regime::Repulsive);
    cplx l = g.complex();
    EXPECT_LE(ybe_residual(p, l, l), 1e-13);
}

TEST(RLL, AllSpinsBothFamilies) {
    testgen::Gen g(36);
    for (const auto& p : families())
        for (double S : {0.5, 1.0, 1.5, 2.0}) {
            SpinRepresentation r = build_rep(S, p);
            for (int i = 0; i < 20; ++i)
                EXPECT_LE(rll_residual(p, r, g.complex(1.0, 0.5), g.complex(1.0, 0.5)), 1e-12)
                    << p.describe() << " S=" << S;
        }
}

TEST(YangBaxter, RelativeResidualWideSamples) {
    // on |Re lambda| <= 3 the entries grow like e^{3 mu}; compare against that scale
    testgen::Gen g(38);
    for (const auto& p : families())
        for (int i = 0; i < 50; ++i) {
            cplx l1 = g.complex(3.0, 1.0), l2 = g.complex(3.0, 1.0);
            double scale = max_norm(r_matrix(p, l1 - l2)) * max_norm(r_matrix(p, l1)) * max_norm(r_matrix(p, l2));
            EXPECT_LE(ybe_residual(p, l1, l2), 1e-14 * std::max(1.0, scale)) << p.describe();
        }
}

TEST(RLL, PerturbationDetected) {
    testgen::Gen g(37);
    ModelParameters p = ModelParameters::rational();
    SpinRepresentation r = build_rep(1.0);
    EXPECT_GE(rll_residual(p, r, g.complex(), g.complex(), 1e-3), 1e-4);
}
