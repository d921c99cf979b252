#include <cmath>

#include <gtest/gtest.h>

#include "defectbethe/lax_operators.hpp"
#include "defectbethe/physics_checks.hpp"
#include "generators.hpp"

using namespace defectbethe;

namespace {

const ModelParameters kRat = ModelParameters::rational();

int count_near(const std::vector<cplx>& v, cplx z) {
    int n = 0;
    for (cplx w : v) n += std::abs(w - z) < 1e-10;
    return n;
}

}  // namespace

TEST(DefectSpectrum, RationalSpinHalf) {
    SpectrumReport r = defect_spectrum_closed_form(kRat, build_rep(0.5), 1.0);
    EXPECT_LE(r.residual, 1e-12);
    EXPECT_FALSE(r.discrepancy);
    // lambda + in/2 has multiplicity n+1, lambda - in/2 multiplicity n-1
    EXPECT_EQ(count_near(r.numeric, cplx(1.0, 1.0)), 3);
    EXPECT_EQ(count_near(r.numeric, cplx(1.0, -1.0)), 1);
}

TEST(DefectSpectrum, RationalSpinOne) {
    SpectrumReport r = defect_spectrum_closed_form(kRat, build_rep(1.0), 0.3);
    EXPECT_LE(r.residual, 1e-12);
    EXPECT_EQ(count_near(r.numeric, cplx(0.3, 1.5)), 4);
    EXPECT_EQ(count_near(r.numeric, cplx(0.3, -1.5)), 2);
}

TEST(DefectSpectrum, RationalAllSpins) {
    testgen::Gen g(61);
    for (double S : {0.5, 1.0, 1.5, 2.0})
        for (int i = 0; i < 5; ++i)
            EXPECT_LE(defect_spectrum_closed_form(kRat, build_rep(S), g.complex()).residual, 1e-12);
}

TEST(DefectSpectrum, TrigFormulaReport) {
    ModelParameters p = ModelParameters::trigonometric(0.3, Regime::Repulsive);
    SpectrumReport r = defect_spectrum_closed_form(p, build_rep(0.5, p), 0.7);
    EXPECT_EQ(r.closed_form.size(), r.numeric.size());
    EXPECT_LE(r.residual, 1e-8);
    testgen::Gen g(62);
    for (double S : {1.0, 1.5, 2.0}) {
        SpectrumReport s = defect_spectrum_closed_form(p, build_rep(S, p), g.complex());
        EXPECT_FALSE(s.discrepancy) << "S=" << S << " residual " << s.residual;
    }
}

TEST(SpinSpectrum, MatchesPrintedList) {
    for (double S : {0.5, 1.0, 1.5, 2.0}) {
        SpinSpectrumReport r = defect_spin_spectrum(build_rep(S));
        EXPECT_LE(r.residual, 1e-13);
        EXPECT_EQ(r.closed_form.size(), std::size_t(2 * (2 * S + 1)));
    }
}

TEST(Matching, DegenerateThrows) {
    EXPECT_THROW(match_multisets({0.0, 10.0}, {1.0, -1.0}), DegenerateSpectrum);
    EXPECT_NEAR(match_multisets({1.0, 2.0}, {2.0, 1.0}), 0.0, 0.0);
    EXPECT_THROW(match_multisets({1.0}, {1.0, 2.0}), DomainError);
}

TEST(MatrixChecks, RationalUnitarityAndCrossing) {
    testgen::Gen g(63);
    for (double S : {1.0, 1.5}) {
        DefectRegimeData rd = make_regime_data(kRat, S);
        MatrixFn T = [&](cplx l) { return transmission_matrix(kRat, rd, l); };
        for (double l : g.grid(20, -2.0, 2.0)) {
            EXPECT_LE(matrix_unitarity_residual(T, l), 1e-9);
            EXPECT_LE(matrix_crossing_residual(T, l), 1e-9);
        }
        EXPECT_LE(matrix_unitarity_residual(T, 0.0), 1e-14);
    }
}

TEST(MatrixChecks, PerturbedPrefactorDetected) {
    DefectRegimeData rd = make_regime_data(kRat, 1.0);
    MatrixFn T = [&](cplx l) { return cplx(1.01) * transmission_matrix(kRat, rd, l); };
    EXPECT_GE(matrix_unitarity_residual(T, 0.4), 1e-3);
}

TEST(MatrixChecks, RepulsiveUnitarityAndCrossing) {
    ModelParameters p = ModelParameters::trigonometric(kPi / 4.0, Regime::Repulsive);  // gamma = 1/3
    DefectRegimeData rd = make_regime_data(p, 1.0);
    ASSERT_DOUBLE_EQ(rd.S_tilde, 0.5);
    MatrixFn T = [&](cplx l) { return transmission_matrix(p, rd, l); };
    testgen::Gen g(64);
    for (double l : g.grid(20, -2.0, 2.0)) {
        EXPECT_LE(matrix_unitarity_residual(T, l), 1e-9);
        EXPECT_LE(matrix_crossing_residual(T, l, crossing_shift(p)), 1e-9);
    }
}

TEST(RTT, RealizableRegimes) {
    testgen::Gen g(65);
    ModelParameters rep = ModelParameters::trigonometric(kPi / 4.0, Regime::Repulsive);
    std::vector<std::pair<ModelParameters, double>> cases = {{kRat, 1.0}, {kRat, 1.5}, {rep, 1.0}};
    for (const auto& [p, S] : cases) {
        DefectRegimeData rd = make_regime_data(p, S);
        for (int i = 0; i < 20; ++i)
            EXPECT_LE(rtt_residual(p, rd, g.real(-2.0, 2.0), g.real(-2.0, 2.0)), 1e-10) << p.describe();
        double l = g.real(-1.0, 1.0);
        EXPECT_LE(rtt_residual(p, rd, l, l), 1e-12);
    }
    ModelParameters att = ModelParameters::trigonometric(0.9, Regime::Attractive);
    EXPECT_THROW(rtt_residual(att, make_regime_data(att, 0.5), 0.1, 0.2), NotRealizable);
}

TEST(MIdentity, Examples) {
    MIdentityReport a = appendix_b_m_identity(build_rep(0.5), 0.4);
    EXPECT_LT(std::abs(a.scalar - 1.16), 1e-14);
    EXPECT_LE(a.unitarity_residual, 1e-12);
    EXPECT_LE(a.crossing_residual, 1e-12);
    EXPECT_LE(a.casimir_residual, 1e-12);
    MIdentityReport b = appendix_b_m_identity(build_rep(1.0), 0.4);
    EXPECT_LT(std::abs(b.scalar - (kI * 0.4 + 1.5) * (-kI * 0.4 + 1.5)), 1e-14);
    MIdentityReport c = appendix_b_m_identity(build_rep(0.5, 0.3), 0.4);
    cplx expect = std::sin(0.3 * (kI * 0.4 + 1.0)) * std::sin(0.3 * (-kI * 0.4 + 1.0));
    EXPECT_LT(std::abs(c.scalar - expect), 1e-15);
    EXPECT_LE(c.casimir_residual, 1e-12);
}

TEST(MIdentity, PropertyRandomSpins) {
    testgen::Gen g(66);
    for (int i = 0; i < 30; ++i) {
        double S = g.spin(3.0);
        std::optional<double> mu;
        if (g.integer(0, 1)) mu = g.real(0.1, 0.5);
        MIdentityReport r = appendix_b_m_identity(build_rep(S, mu), g.complex());
        EXPECT_LE(r.unitarity_residual, 1e-12 * std::max(1.0, std::abs(r.scalar)));
        EXPECT_LE(r.crossing_residual, 1e-12 * std::max(1.0, std::abs(r.scalar)));
        EXPECT_LE(r.casimir_residual, 1e-12 * std::max(1.0, std::abs(r.scalar)));
    }
}

TEST(ScalarChecks, UnitarityAndCrossing) {
    testgen::Gen g(67);
    std::vector<ModelParameters> ps = {kRat, ModelParameters::trigonometric(0.9, Regime::Repulsive),
                                       ModelParameters::trigonometric(0.9, Regime::Attractive)};
    for (const auto& p : ps)
        for (double S : {0.5, 1.0, 1.5}) {
            DefectRegimeData rd = make_regime_data(p, S);
            for (double l : g.grid(20, -2.0, 2.0)) {
                EXPECT_LE(scalar_unitarity_residual(p, rd, l), 1e-9) << p.describe() << " S=" << S;
                EXPECT_LE(scalar_crossing_residual(p, rd, l), 1e-9) << p.describe() << " S=" << S;
            }
        }
}

TEST(ScalarChecks, RationalSecondRatioFromMatrix) {
    testgen::Gen g(68);
    for (double S : {1.0, 1.5, 2.0}) {
        DefectRegimeData rd = make_regime_data(kRat, S);
        for (int i = 0; i < 5; ++i) {
            double l = g.real(-2.0, 2.0);
            Eigen::ComplexEigenSolver<Mat> es(transmission_matrix(kRat, rd, l), false);
            cplx t1 = transmission_amplitude(kRat, rd, l).value;
            cplx want = transmission_second_ratio(rd, l);
            double best = 1e300;
            for (int k = 0; k < es.eigenvalues().size(); ++k)
                if (std::abs(es.eigenvalues()(k) - t1) > 1e-8)
                    best = std::min(best, std::abs(es.eigenvalues()(k) / t1 - want));
            EXPECT_LE(best, 1e-10);
        }
    }
}
