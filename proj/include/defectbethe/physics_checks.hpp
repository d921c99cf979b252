#pragma once

#include <functional>
#include <vector>

#include "defectbethe/amplitudes.hpp"
#include "defectbethe/common.hpp"
#include "defectbethe/spin_algebra.hpp"

namespace defectbethe {

struct SpectrumReport {
    std::vector<cplx> closed_form;
    std::vector<cplx> numeric;
    // max distance between matched closed-form and numerical eigenvalues
    double residual = 0.0;
    // true when the residual exceeds 1e-8 (reported, not thrown)
    bool discrepancy = false;
};

// Eigenvalues of the defect Lax operator.
//   rational: lambda + in/2 (multiplicity n+1) and lambda - in/2 (multiplicity n-1)
//   trigonometric: sinh(mu(lambda + in/2)) twice and, for k = 1..n-1,
//   cos(mu(n-2k)/2) sinh(lambda mu) +- (1/2)[-1 - cos(mu(2k-n)) + 2 cos(n mu)
//                                            + cosh(2 lambda mu)(-1 + cos(mu(n-2k)))]^{1/2}
SpectrumReport defect_spectrum_closed_form(const ModelParameters& params,
                                           const SpinRepresentation& rep, cplx lambda);

// greedy multiset matching by increasing distance; throws DegenerateSpectrum when
// two distinct candidates are equally close within 1e-10
double match_multisets(const std::vector<cplx>& a, const std::vector<cplx>& b);

struct SpinSpectrumReport {
    std::vector<double> closed_form;  // {S+1/2} u {S+1/2-k, twice} u {-S-1/2}, sorted
    std::vector<double> numeric;      // sorted eigenvalues of the total spin operator
    double residual = 0.0;
};
SpinSpectrumReport defect_spin_spectrum(const SpinRepresentation& rep);

using MatrixFn = std::function<Mat(cplx)>;

// || T(l) T(-l) - I ||
double matrix_unitarity_residual(const MatrixFn& T, cplx lambda);
// || T^{t1}(-l + shift) T^{t1}(l + shift) - I ||
double matrix_crossing_residual(const MatrixFn& T, cplx lambda, cplx shift = kI);

// crossing shift of the transmission matrix in its own rapidity: i (rational and
// repulsive) or i gamma (attractive, i.e. u -> u + i with u = lambda-hat/gamma)
cplx crossing_shift(const ModelParameters& params);

// || S12(l1-l2) T1(l1) T2(l2) - T2(l2) T1(l1) S12(l1-l2) ||
double rtt_residual(const ModelParameters& params, const DefectRegimeData& rd, cplx l1, cplx l2);

struct MIdentityReport {
    cplx scalar;          // (i l + S + 1/2)(-i l + S + 1/2) or the sin analogue
    cplx casimir_scalar;  // l^2 + C or cos(2 mu i l)/2 - C_q/4
    double unitarity_residual = 0.0;  // || M(l) M(-l) - scalar I ||
    double crossing_residual = 0.0;   // || M^{t1}(l+i) M^{t1}(-l+i) - scalar I ||
    double casimir_residual = 0.0;    // | scalar - casimir_scalar |
};
MIdentityReport appendix_b_m_identity(const SpinRepresentation& rep, cplx lambda);

// | T(l) T(-l) - 1 | for the first transmission eigenvalue
double scalar_unitarity_residual(const ModelParameters& params, const DefectRegimeData& rd,
                                 cplx lambda);
// | T(l + s) T(-l + s) f(l) - 1 | with s = crossing_shift and
// f = (il + S~ + 1/2)(-il + S~ + 1/2)/((il + S~ - 1/2)(-il + S~ - 1/2)) (rational) or the
// sin(pi gamma ...) analogue in u = l/gamma (trigonometric)
double scalar_crossing_residual(const ModelParameters& params, const DefectRegimeData& rd,
                                cplx lambda);

}  // namespace defectbethe
