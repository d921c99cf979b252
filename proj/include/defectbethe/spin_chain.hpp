#pragma once

#include <vector>

#include "defectbethe/common.hpp"
#include "defectbethe/spin_algebra.hpp"

namespace defectbethe {

// N bulk spin-1/2 sites plus one spin-S defect at position defect_site
// (1-based, in 1..N+1); the quantum space is ordered by site position.
struct ChainSpec {
    int N = 2;
    int defect_site = 1;
    double S = 0.5;
    double Theta = 0.0;
    ModelParameters params = ModelParameters::rational();
};

// Hilbert-space cap: DEFECTBETHE_MAX_DIM if set, otherwise 2^14
long max_hilbert_dim();
long hilbert_dim(const ChainSpec& chain);
// local dimensions of sites 1..N+1
std::vector<int> site_dims(const ChainSpec& chain);

// L_{0,N+1}(l) ... Ltilde_{0,n}(l - Theta) ... L_{0,1}(l) on aux (x) quantum
Mat monodromy(const ChainSpec& chain, cplx lambda);
Mat transfer(const ChainSpec& chain, cplx lambda);
Mat transfer_derivative(const ChainSpec& chain, cplx lambda);

// i for the rational family, sinh(i mu) for the trigonometric one
cplx regularity_scale(const ModelParameters& params);

// -(sum of bulk Rdot-check terms + rho Ldot L^{-1} + L Rdot-check_{n-1,n+1} L^{-1}),
// local terms at lambda = 0; needs N >= 2
Mat hamiltonian(const ChainSpec& chain);
// -rho t(0)^{-1} t'(0)
Mat hamiltonian_log_derivative(const ChainSpec& chain);

Vec pseudovacuum(const ChainSpec& chain);
Mat total_sz(const ChainSpec& chain);

struct StringDescriptor {
    int length = 1;
    int parity = 1;
    double center = 0.0;
};

// Roots are in the symmetric Bethe variable u, i.e. the transfer-matrix
// spectral parameter shifted by i/2: e_{2S}(u_i - Theta) e_1(u_i)^N = prod_{j != i} e_2(u_i - u_j)
struct BetheState {
    int M = 0;
    std::vector<cplx> roots;
    std::vector<double> holes;
    std::vector<StringDescriptor> strings;
    double residual = 0.0;
    int iterations = 0;
};

struct BaeOptions {
    double tol = 1e-12;
    int max_iter = 200;
    double divergence = 1e6;
};

// e_n(x) = (x + in/2)/(x - in/2) or sinh(mu(x + in/2))/sinh(mu(x - in/2))
cplx bae_e(const ModelParameters& params, double n, cplx x);

// lambda0 + (i/2)(n + 1 - 2j), j = 1..n, plus i pi/(2 mu) for negative parity
std::vector<cplx> string_seeds(const ModelParameters& params, const StringDescriptor& s);
// M real 1-strings spread around zero (negative parity in the attractive regime)
std::vector<cplx> default_seeds(const ChainSpec& chain, int M);

// Newton iteration on log(LHS_i/RHS_i) with backtracking
BetheState solve_bae(const ChainSpec& chain, int M, std::vector<cplx> seeds = {},
                     const BaeOptions& opt = {});
// max_i |LHS_i/RHS_i - 1|
double bae_residual(const ChainSpec& chain, const BetheState& state);

// algebraic Bethe ansatz eigenvalue of t(lambda) for roots in the u variable
cplx aba_eigenvalue(const ChainSpec& chain, const std::vector<cplx>& roots, cplx lambda);

}  // namespace defectbethe
