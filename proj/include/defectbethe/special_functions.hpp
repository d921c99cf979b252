#pragma once

#include <functional>
#include <vector>

#include "defectbethe/common.hpp"

namespace defectbethe {

// principal branch of log Gamma(z); throws PoleError within 1e-12 of 0, -1, -2, ...
cplx log_gamma(cplx z);

// Bernoulli number B_n (B_1 = -1/2), n <= 30
double bernoulli_number(int n);
// Bernoulli polynomial B_n(x), n <= 30
cplx bernoulli_poly(int n, cplx x);
// Hurwitz zeta zeta(s, q) for integer s >= 2 and real q > 0
double hurwitz_zeta(int s, double q);
// digamma for real x > 0
double digamma(double x);

// Gamma(a + b*k + c) raised to the power sign
struct GammaFactor {
    int sign = 1;
    cplx a{0.0, 0.0};
    double b = 1.0;
    cplx c{0.0, 0.0};

    cplx base() const { return a + c; }
};

// How to treat a nonzero 1/k coefficient in the log of the product terms.
// None: the product must converge (construction rejects d_1 != 0).
// ArgumentScale: the harmonic divergence d_1 * sum 1/k is replaced by its
// zeta-regularized value, i.e. partial products are divided by (b K)^{-d_1}.
enum class Regularization { None, ArgumentScale };

class GammaProductSpec {
public:
    GammaProductSpec() = default;
    // validates b > 0 and the balance conditions; cancels identical
    // numerator/denominator pairs
    explicit GammaProductSpec(std::vector<GammaFactor> factors,
                              Regularization reg = Regularization::None);

    const std::vector<GammaFactor>& factors() const { return factors_; }
    Regularization regularization() const { return reg_; }
    // coefficient of 1/k in the large-k expansion of the log term
    cplx d1() const;
    GammaProductSpec inverted() const;

private:
    std::vector<GammaFactor> factors_;
    Regularization reg_ = Regularization::None;
};

struct GammaProductOptions {
    int min_terms = 200;
    int max_terms = 20000;
    int tail_orders = 14;
};

// prod_{k>=0} prod_i Gamma(a_i + b_i k + c_i)^{s_i}
AmplitudeValue gamma_product(const GammaProductSpec& spec, double tol = 1e-10,
                             const GammaProductOptions& opt = {});

using RealFn = std::function<double(double)>;

struct QuadResult {
    double value = 0.0;
    double err = 0.0;
    int evals = 0;
};

// adaptive Gauss-Kronrod (7/15) on [a, b]
QuadResult integrate(const RealFn& f, double a, double b, double tol,
                     int max_intervals = 4000);

struct FourierOptions {
    double tol = 1e-12;
    double omega_max = 4000.0;
    int max_intervals = 4000;
};

// cutoff Omega with |k(w)| below tol for w >= Omega (kernel assumed to decay
// exponentially); throws NonConvergence if no cutoff below omega_max is found
double kernel_cutoff(const RealFn& kernel, double tol, double omega_max);

// exp[-int_{-inf}^{inf} dw/w e^{-i w lambda} k(w)] for an even kernel k,
// evaluated as exp[2i int_0^inf sin(w lambda) k(w)/w dw]
AmplitudeValue fourier_log_integral(const RealFn& kernel, double lambda,
                                    const FourierOptions& opt = {});

// f(lambda) = (1/2pi) int e^{-i w lambda} k(w) dw for even k
QuadResult inverse_fourier_even(const RealFn& kernel, double lambda,
                                const FourierOptions& opt = {});

// 2 int_0^inf sin(w lambda) k(w)/w dw, i.e. 2pi int_0^lambda of the inverse
// transform of k
QuadResult sine_transform_over_omega(const RealFn& kernel, double lambda,
                                     const FourierOptions& opt = {});

enum class GammaIdentity { Use1, Use2 };

struct IdentityCheck {
    double residual = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

// use1: mu_param > -1 (beta ignored); use2: mu_param > 0, beta > 0
IdentityCheck verify_gamma_integral_identity(GammaIdentity kind, double mu_param,
                                             double beta_param = 1.0);

}  // namespace defectbethe
