#pragma once

#include <string>
#include <vector>

#include "defectbethe/common.hpp"
#include "defectbethe/special_functions.hpp"
#include "defectbethe/spin_algebra.hpp"

namespace defectbethe {

// Branch data for a defect of spin S and rapidity Theta.
//   rational:   m = 0, S_tilde = S - 1/2
//   repulsive:  2 m nu < 2S < 2 (m+1) nu, S_tilde = S - m - 1/2
//   attractive: m nu < 2S < (m+1) nu, S_tilde = m, xi = S + gamma/2,
//               eta_{1,2} = (i pi/gamma)(Lambda +- xi)
struct DefectRegimeData {
    double S = 0.5;
    double Theta = 0.0;
    double Lambda = 0.0;
    int m = 0;
    double S_tilde = 0.0;
    double xi = 0.0;
    cplx eta1{0.0, 0.0};
    cplx eta2{0.0, 0.0};
};

// throws DomainError on a window boundary or S <= 0
DefectRegimeData make_regime_data(const ModelParameters& params, double S, double Theta = 0.0,
                                  double Lambda = 0.0);

enum class RatioKind { E, G };

// e_n = (l + in/2)/(l - in/2) or sinh(mu(l + in/2))/sinh(mu(l - in/2));
// g_n = cosh(mu(l + in/2))/cosh(mu(l - in/2)) (trigonometric only)
cplx elementary_ratio(RatioKind kind, const ModelParameters& params, double n, cplx lambda);

enum class KernelName {
    A,               // a_n, extra = n
    B,               // b_n (attractive), extra = n
    Sigma0,          // ground-state density
    RS,              // hole-hole
    RT,              // hole-defect, extra = y = 2S
    BreatherSigma0,  // lightest breather density
    RB,              // breather-breather
    TB,              // breather-defect, extra = y = 2S
    BreatherR,       // R in the negative-parity density, hole position
    BreatherB,       // B in the negative-parity density, extra = y
};

KernelName kernel_from_string(const std::string& name);
std::string to_string(KernelName name);

// Fourier transform hat-k(w) as a function of w, with its window checked once
RealFn make_kernel(KernelName name, const ModelParameters& params, double extra = 0.0);
double kernel_hat(KernelName name, double omega, const ModelParameters& params,
                  double extra = 0.0);

enum class DispersionKind { Hole, Breather };

struct Dispersion {
    double energy = 0.0;
    double momentum = 0.0;
    double err = 0.0;
    bool closed_form = false;
};

// energy eps = sigma0(lambda) and momentum p = 2 pi int_0^lambda sigma0 (odd)
Dispersion dispersion(DispersionKind kind, const ModelParameters& params, double lambda);

// sigma0(l) + (sum_k r_s(l - hole_k) + r_t(l - Theta))/N
double state_density(const ModelParameters& params, const DefectRegimeData& rd,
                     const std::vector<double>& holes, double lambda, int N);

// hole-hole amplitude S_s from its Gamma form
AmplitudeValue kink_S_amplitude(const ModelParameters& params, cplx lambda, double tol = 1e-12);
// the same from the Fourier form with r_s
AmplitudeValue kink_S_integral(const ModelParameters& params, double lambda,
                               const FourierOptions& opt = {});

// 4x4 bulk S-matrix: S_s/a * [[a], [b, c], [c, b], [a]]
Mat s_matrix(const ModelParameters& params, cplx lambda);

// first transmission eigenvalue T(lambda-hat) from its Gamma form
AmplitudeValue transmission_amplitude(const ModelParameters& params, const DefectRegimeData& rd,
                                      cplx lambda_hat, double tol = 1e-12);
// the same from the Fourier form with r_t (Lambda must be zero)
AmplitudeValue transmission_integral(const ModelParameters& params, const DefectRegimeData& rd,
                                     double lambda_hat, const FourierOptions& opt = {});
// rational: T2/T = (i l - S_tilde - 1/2)/(i l + S_tilde + 1/2)
cplx transmission_second_ratio(const DefectRegimeData& rd, cplx lambda_hat);

// deformation of the representation carried by the transmission matrix:
// empty (rational) or pi*gamma (repulsive)
std::optional<double> transmission_rep_mu(const ModelParameters& params);
// spin-S_tilde representation matching the transmission matrix (S_tilde = 0 gives
// the one-dimensional trivial representation)
SpinRepresentation transmission_rep(const ModelParameters& params, const DefectRegimeData& rd);

// M(l) block matrix: [[f(l, Sz), c S-], [c S+, f(l, -Sz)]] with f = i l + Sz + 1/2
// (rational) or sin(mu (i l + Sz + 1/2)) and c = sin(mu) (deformed rep)
Mat m_block(const SpinRepresentation& rep, cplx lambda);
// scalar normalization: i l + S + 1/2 or sin(mu (i l + S + 1/2))
cplx m_block_denominator(const SpinRepresentation& rep, cplx lambda);

// rational and repulsive: T / denominator * M on the spin-S_tilde rep;
// attractive throws NotRealizable (see attractive_transmission_template)
Mat transmission_matrix(const ModelParameters& params, const DefectRegimeData& rd,
                        cplx lambda_hat);
Mat transmission_matrix(const ModelParameters& params, const DefectRegimeData& rd,
                        const SpinRepresentation& rep, cplx lambda_hat);

// symbolic 2x2 template of the attractive transmission matrix in u = lambda-hat/gamma:
// prefactor T/sin(pi gamma (i u + S_tilde + 1/2)) times
// [[sin(pi gamma (i u + Sz + 1/2)), sin(pi gamma) S-], [sin(pi gamma) S+, sin(pi gamma (i u - Sz + 1/2))]]
// with Sz, S+- unevaluated. branch records the sin/cos identity used for
// sin(pi gamma (i u + 1/2 - (S + 1/2)/gamma)).
struct AttractiveTemplate {
    cplx u;
    AmplitudeValue scalar;
    cplx denominator;
    cplx prefactor;
    cplx offdiag_coefficient;
    std::string diagonal_entry;
    std::string branch;  // "sin" when S + 1/2 is an integer, "cos" otherwise
    int branch_sign = 1;
    double identity_residual = 0.0;
};
AttractiveTemplate attractive_transmission_template(const ModelParameters& params,
                                                    const DefectRegimeData& rd,
                                                    cplx lambda_hat);

// z1 = -i l + Lambda + xi, z2 = -i l + Lambda - xi
struct CorriganVariables {
    cplx z1, z2;
};
CorriganVariables corrigan_variables(const DefectRegimeData& rd, cplx lambda_hat);

struct CorriganResult {
    AmplitudeValue T;
    AmplitudeValue rho_d;
};
// rho_d(z1, z2) = Gamma(1/2 - z1) Gamma(1/2 - z2) prod_{k>=1} ..., T = cos(pi z1)/pi rho_d
CorriganResult corrigan_form(cplx z1, cplx z2, double gamma, double tol = 1e-12);

// lightest-breather amplitudes and their fusions (theta = pi lambda/gamma)
cplx breather_S(int n1, int n2, cplx lambda, double gamma);
cplx breather_T(int n, cplx lambda_hat, double gamma, cplx eta1, cplx eta2);
// Fourier forms, oriented as -F(-lambda) with F the printed exponential
AmplitudeValue breather_S_integral(const ModelParameters& params, double lambda,
                                   const FourierOptions& opt = {});
AmplitudeValue breather_T_integral(const ModelParameters& params, const DefectRegimeData& rd,
                                   double lambda_hat, const FourierOptions& opt = {});

// the repulsive one-hole spin nu/(nu-1) (S_tilde + 1/2) with the renormalization removed
double renormalized_hole_spin(const ModelParameters& params, const DefectRegimeData& rd);

}  // namespace defectbethe
