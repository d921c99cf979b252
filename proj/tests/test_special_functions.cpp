#include <cmath>

#include <gtest/gtest.h>

#include "defectbethe/amplitudes.hpp"
#include "defectbethe/special_functions.hpp"
#include "generators.hpp"

using namespace defectbethe;

TEST(LogGamma, KnownValues) {
    EXPECT_NEAR(std::abs(log_gamma(1.0)), 0.0, 1e-14);
    EXPECT_NEAR(log_gamma(0.5).real(), 0.5723649429247001, 1e-13);
    EXPECT_NEAR(log_gamma(5.0).real(), std::log(24.0), 1e-13);
    EXPECT_NEAR(log_gamma(5.0).imag(), 0.0, 1e-14);
}

TEST(LogGamma, PolesThrow) {
    EXPECT_THROW(log_gamma(0.0), PoleError);
    EXPECT_THROW(log_gamma(-3.0), PoleError);
    EXPECT_NO_THROW(log_gamma(cplx(-3.0, 1e-6)));
}

TEST(LogGamma, RecurrenceAgainstStdLgamma) {
    testgen::Gen g(11);
    for (int i = 0; i < 50; ++i) {
        double x = g.real(0.1, 30.0);
        EXPECT_NEAR(log_gamma(x).real(), std::lgamma(x), 1e-12 * std::max(1.0, std::abs(std::lgamma(x))));
    }
    for (int i = 0; i < 50; ++i) {
        cplx z = g.complex(8.0, 8.0);
        if (std::abs(z.imag()) < 0.1) continue;
        cplx lhs = std::exp(log_gamma(z + 1.0) - log_gamma(z));
        EXPECT_LT(std::abs(lhs - z), 1e-11 * std::abs(z));
    }
}

TEST(LogGamma, ReflectionOffAxis) {
    testgen::Gen g(12);
    for (int i = 0; i < 100; ++i) {
        cplx z(g.real(-4.0, 4.0), g.real(0.05, 3.0) * (g.integer(0, 1) ? 1 : -1));
        cplx v = std::exp(log_gamma(z) + log_gamma(1.0 - z)) * std::sin(kPi * z) / kPi;
        EXPECT_LT(std::abs(v - 1.0), 1e-11) << fmt_cplx(z);
    }
}

TEST(LogGamma, ConjugateSymmetry) {
    testgen::Gen g(13);
    for (int i = 0; i < 30; ++i) {
        cplx z(g.real(0.2, 10.0), g.real(-10.0, 10.0));
        EXPECT_LT(std::abs(log_gamma(std::conj(z)) - std::conj(log_gamma(z))), 1e-12);
    }
}

TEST(Bernoulli, Numbers) {
    EXPECT_DOUBLE_EQ(bernoulli_number(0), 1.0);
    EXPECT_DOUBLE_EQ(bernoulli_number(1), -0.5);
    EXPECT_NEAR(bernoulli_number(2), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(bernoulli_number(4), -1.0 / 30.0, 1e-15);
    EXPECT_EQ(bernoulli_number(7), 0.0);
    EXPECT_NEAR(std::abs(bernoulli_poly(2, 0.5) - cplx(-1.0 / 12.0)), 0.0, 1e-14);
}

TEST(Zeta, HurwitzAndDigamma) {
    EXPECT_NEAR(hurwitz_zeta(2, 1.0), kPi * kPi / 6.0, 1e-13);
    EXPECT_NEAR(hurwitz_zeta(4, 1.0), std::pow(kPi, 4) / 90.0, 1e-13);
    EXPECT_NEAR(digamma(1.0), -0.5772156649015329, 1e-13);
    EXPECT_NEAR(digamma(0.5), -0.5772156649015329 - 2.0 * std::log(2.0), 1e-13);
}

TEST(GammaProduct, IdenticalSetsCancel) {
    GammaProductSpec spec({{+1, cplx(0.3, 0.2), 1.0, 0.0}, {-1, cplx(0.3, 0.2), 1.0, 0.0}});
    AmplitudeValue v = gamma_product(spec);
    EXPECT_EQ(v.value, cplx(1.0));
    EXPECT_EQ(v.err_estimate, 0.0);
}

TEST(GammaProduct, UnbalancedRejected) {
    EXPECT_THROW(GammaProductSpec({{+1, 0.5, 1.0, 0.0}}), DomainError);
    EXPECT_THROW(GammaProductSpec({{+1, 0.5, 1.0, 0.0}, {-1, 0.5, 2.0, 0.0}}), DomainError);
    EXPECT_THROW(GammaProductSpec({{+1, 0.5, -1.0, 0.0}, {-1, 0.5, -1.0, 0.0}}), DomainError);
}

TEST(GammaProduct, RegularizedTelescopingProduct) {
    // prod_k (a + 2k)/(b + 2k) written with Gamma ratios; zeta-regularized value
    // Gamma(b/2)/Gamma(a/2) * 2^{(b-a)/2}
    double a = 0.7, b = 1.3;
    GammaProductSpec spec({{+1, a, 2.0, 1.0}, {+1, b, 2.0, 0.0}, {-1, a, 2.0, 0.0}, {-1, b, 2.0, 1.0}},
                          Regularization::ArgumentScale);
    AmplitudeValue v = gamma_product(spec, 1e-12);
    double oracle = std::exp(std::lgamma(b / 2) - std::lgamma(a / 2)) * std::pow(2.0, (b - a) / 2.0);
    EXPECT_LT(std::abs(v.value - oracle), 1e-9) << fmt_cplx(v.value) << " vs " << oracle;
    EXPECT_THROW(GammaProductSpec({{+1, a, 2.0, 1.0}, {+1, b, 2.0, 0.0}, {-1, a, 2.0, 0.0}, {-1, b, 2.0, 1.0}}),
                 DomainError);
}

TEST(GammaProduct, KinkUnitarityFromEngine) {
    ModelParameters p = ModelParameters::trigonometric(kPi / 3.0, Regime::Repulsive);  // gamma = 1/2
    EXPECT_NEAR(p.gamma(), 0.5, 1e-15);
    EXPECT_LT(std::abs(kink_S_amplitude(p, 0.0).value - 1.0), 1e-12);
    cplx v = kink_S_amplitude(p, 0.7).value * kink_S_amplitude(p, -0.7).value;
    EXPECT_LT(std::abs(v - 1.0), 1e-10);
}

TEST(Quadrature, GaussKronrod) {
    QuadResult r = integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-13);
    EXPECT_NEAR(r.value, std::sqrt(kPi), 1e-12);
    QuadResult s = integrate([](double x) { return std::sin(x); }, 0.0, kPi, 1e-13);
    EXPECT_NEAR(s.value, 2.0, 1e-12);
}

TEST(Fourier, ZeroKernelGivesOne) {
    AmplitudeValue v = fourier_log_integral([](double) { return 0.0; }, 1.7);
    EXPECT_LT(std::abs(v.value - 1.0), 1e-15);
}

TEST(Fourier, RationalKinkDuality) {
    ModelParameters p = ModelParameters::rational();
    RealFn rs = make_kernel(KernelName::RS, p);
    EXPECT_LT(std::abs(fourier_log_integral(rs, 0.0).value - 1.0), 1e-15);
    AmplitudeValue f = fourier_log_integral(rs, 1.3);
    cplx h = 0.5 * kI * 1.3;
    cplx oracle = std::exp(log_gamma(0.5 - h) + log_gamma(1.0 + h) - log_gamma(1.0 - h) - log_gamma(0.5 + h));
    EXPECT_LT(std::abs(f.value - oracle), 1e-8);
}

TEST(Fourier, InverseTransformOfSech) {
    // (1/2pi) int e^{-iwl} / (2 cosh(w/2)) dw = 1/(2 cosh(pi l))
    RealFn k = [](double w) { return 0.5 / std::cosh(0.5 * w); };
    for (double l : {0.0, 0.3, 1.1}) {
        QuadResult r = inverse_fourier_even(k, l);
        EXPECT_NEAR(r.value, 0.5 / std::cosh(kPi * l), 1e-11);
    }
}

TEST(Identities, Use1Examples) {
    IdentityCheck c1 = verify_gamma_integral_identity(GammaIdentity::Use1, 1.0);
    EXPECT_LE(c1.residual, 1e-8);
    EXPECT_NEAR(c1.rhs, std::log(std::sqrt(kPi)), 1e-12);
    IdentityCheck c3 = verify_gamma_integral_identity(GammaIdentity::Use1, 3.0);
    EXPECT_LE(c3.residual, 1e-8);
    EXPECT_NEAR(c3.rhs, -std::lgamma(1.5), 1e-12);
}

TEST(Identities, Use2Example) {
    EXPECT_LE(verify_gamma_integral_identity(GammaIdentity::Use2, 2.0, 1.0).residual, 1e-6);
}

TEST(Identities, DomainChecks) {
    EXPECT_THROW(verify_gamma_integral_identity(GammaIdentity::Use1, -1.5), DomainError);
    EXPECT_THROW(verify_gamma_integral_identity(GammaIdentity::Use2, 1.0, -1.0), DomainError);
}

TEST(Identities, Use1RandomSweep) {
    testgen::Gen g(14);
    for (int i = 0; i < 10; ++i)
        EXPECT_LE(verify_gamma_integral_identity(GammaIdentity::Use1, g.real(-0.9, 10.0)).residual, 1e-8);
}
