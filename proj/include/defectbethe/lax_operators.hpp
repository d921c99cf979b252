#pragma once

#include <vector>

#include "defectbethe/common.hpp"
#include "defectbethe/spin_algebra.hpp"

namespace defectbethe {

// Tensor convention: the first factor is the most significant index, so
// |a> (x) |b> has index a * dim_b + b. The auxiliary space always comes first.
Mat kron(const Mat& a, const Mat& b);
// P |a> (x) |b> = |b> (x) |a>, from C^d1 (x) C^d2 to C^d2 (x) C^d1
Mat permutation(int d1, int d2);
// M <- op_{sites} M, op acting on the listed sites (first listed = most significant)
void apply_local_left(Mat& M, const Mat& op, const std::vector<int>& dims,
                      const std::vector<int>& sites);
Mat embed(const Mat& op, const std::vector<int>& dims, const std::vector<int>& sites);
// transpose in the leading 2-dimensional factor of C^2 (x) C^d
Mat partial_transpose_aux(const Mat& M);
// trace over the leading 2-dimensional factor
Mat partial_trace_aux(const Mat& M);

// 4x4 R-matrix: rational lambda + iP; trigonometric a, b, c with
// a = sinh(mu(lambda + i)), b = sinh(mu lambda), c = sinh(i mu)
Mat r_matrix(const ModelParameters& params, cplx lambda);
Mat r_matrix_derivative(const ModelParameters& params, cplx lambda);

// 2n x 2n defect Lax operator [[A, B], [C, D]] on C^2 (x) C^n
Mat defect_lax(const ModelParameters& params, const SpinRepresentation& rep, cplx lambda);
Mat defect_lax_derivative(const ModelParameters& params, const SpinRepresentation& rep,
                          cplx lambda);

// R12(l1-l2) R13(l1) R23(l2) - R23(l2) R13(l1) R12(l1-l2)
double ybe_residual(const ModelParameters& params, cplx l1, cplx l2);

// R12(l1-l2) L1(l1) L2(l2) - L2(l2) L1(l1) R12(l1-l2) on aux (x) aux (x) rep;
// perturbation (if nonzero) is added to entry (0,0) of L to test sensitivity
double rll_residual(const ModelParameters& params, const SpinRepresentation& rep, cplx l1,
                    cplx l2, cplx perturbation = 0.0);

// || R(0) - s P || minimized over the scalar s
double regularity_check(const ModelParameters& params);

}  // namespace defectbethe
