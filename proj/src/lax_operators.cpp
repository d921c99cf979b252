#include "defectbethe/lax_operators.hpp"

#include <numeric>

namespace defectbethe {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat permutation(int d1, int d2) {
    Mat P = Mat::Zero(d1 * d2, d1 * d2);
    for (int a = 0; a < d1; ++a)
        for (int b = 0; b < d2; ++b) P(b * d1 + a, a * d2 + b) = 1.0;
    return P;
}

void apply_local_left(Mat& M, const Mat& op, const std::vector<int>& dims,
                      const std::vector<int>& sites) {
    const int nsites = int(dims.size());
    std::vector<long> stride(nsites, 1);
    for (int s = nsites - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];
    long total = stride[0] * dims[0];
    if (M.rows() != total) throw DomainError("apply_local_left: dimension mismatch");

    long dloc = 1;
    for (int s : sites) dloc *= dims[s];
    if (op.rows() != dloc || op.cols() != dloc)
        throw DomainError("apply_local_left: operator size does not match its sites");

    // row offsets of each local basis state, first listed site most significant
    std::vector<long> offset(dloc, 0);
    for (long l = 0; l < dloc; ++l) {
        long rem = l, off = 0;
        for (int k = int(sites.size()) - 1; k >= 0; --k) {
            int d = dims[sites[k]];
            off += (rem % d) * stride[sites[k]];
            rem /= d;
        }
        offset[l] = off;
    }
    std::vector<bool> on_site(nsites, false);
    for (int s : sites) on_site[s] = true;

    Mat block(dloc, M.cols());
    for (long i = 0; i < total; ++i) {
        // only visit bases whose local digits are all zero
        bool base = true;
        for (int s = 0; s < nsites && base; ++s)
            if (on_site[s] && (i / stride[s]) % dims[s] != 0) base = false;
        if (!base) continue;
        for (long l = 0; l < dloc; ++l) block.row(l) = M.row(i + offset[l]);
        Mat res = op * block;
        for (long l = 0; l < dloc; ++l) M.row(i + offset[l]) = res.row(l);
    }
}

Mat embed(const Mat& op, const std::vector<int>& dims, const std::vector<int>& sites) {
    long total = std::accumulate(dims.begin(), dims.end(), 1L, std::multiplies<long>());
    Mat M = Mat::Identity(total, total);
    apply_local_left(M, op, dims, sites);
    return M;
}

Mat partial_transpose_aux(const Mat& M) {
    const Eigen::Index d = M.rows() / 2;
    Mat out = M;
    out.block(0, d, d, d) = M.block(d, 0, d, d);
    out.block(d, 0, d, d) = M.block(0, d, d, d);
    return out;
}

Mat partial_trace_aux(const Mat& M) {
    const Eigen::Index d = M.rows() / 2;
    return M.block(0, 0, d, d) + M.block(d, d, d, d);
}

Mat r_matrix(const ModelParameters& params, cplx lambda) {
    Mat R = Mat::Zero(4, 4);
    if (params.is_rational()) {
        R = lambda * Mat::Identity(4, 4) + kI * permutation(2, 2);
        return R;
    }
    double mu = params.mu();
    cplx a = std::sinh(mu * (lambda + kI));
    cplx b = std::sinh(mu * lambda);
    cplx c = std::sinh(kI * mu);
    R(0, 0) = a;
    R(3, 3) = a;
    R(1, 1) = b;
    R(2, 2) = b;
    R(1, 2) = c;
    R(2, 1) = c;
    return R;
}

Mat r_matrix_derivative(const ModelParameters& params, cplx lambda) {
    if (params.is_rational()) return Mat::Identity(4, 4);
    double mu = params.mu();
    Mat R = Mat::Zero(4, 4);
    cplx a = mu * std::cosh(mu * (lambda + kI));
    cplx b = mu * std::cosh(mu * lambda);
    R(0, 0) = a;
    R(3, 3) = a;
    R(1, 1) = b;
    R(2, 2) = b;
    return R;
}

namespace {

void check_rep(const ModelParameters& params, const SpinRepresentation& rep) {
    if (params.is_rational() != !rep.mu.has_value())
        throw RepMismatch("representation deformation does not match the model family");
    if (rep.mu && std::abs(*rep.mu - params.mu()) > 1e-14)
        throw RepMismatch("representation q does not match the model anisotropy");
}

}  // namespace

Mat defect_lax(const ModelParameters& params, const SpinRepresentation& rep, cplx lambda) {
    check_rep(params, rep);
    const int n = rep.dim;
    Mat L = Mat::Zero(2 * n, 2 * n);
    if (params.is_rational()) {
        Mat I = Mat::Identity(n, n);
        L.topLeftCorner(n, n) = lambda * I + kI * rep.Sz + 0.5 * kI * I;
        L.bottomRightCorner(n, n) = lambda * I - kI * rep.Sz + 0.5 * kI * I;
        L.topRightCorner(n, n) = kI * rep.Sm;
        L.bottomLeftCorner(n, n) = kI * rep.Sp;
        return L;
    }
    double mu = params.mu();
    for (int k = 0; k < n; ++k) {
        double a = rep.Sz(k, k).real();
        L(k, k) = std::sinh(mu * (lambda + kI * a + 0.5 * kI));
        L(n + k, n + k) = std::sinh(mu * (lambda - kI * a + 0.5 * kI));
    }
    cplx c = std::sinh(kI * mu);
    L.topRightCorner(n, n) = c * rep.Sm;
    L.bottomLeftCorner(n, n) = c * rep.Sp;
    return L;
}

Mat defect_lax_derivative(const ModelParameters& params, const SpinRepresentation& rep,
                          cplx lambda) {
    check_rep(params, rep);
    const int n = rep.dim;
    if (params.is_rational()) return Mat::Identity(2 * n, 2 * n);
    double mu = params.mu();
    Mat L = Mat::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        double a = rep.Sz(k, k).real();
        L(k, k) = mu * std::cosh(mu * (lambda + kI * a + 0.5 * kI));
        L(n + k, n + k) = mu * std::cosh(mu * (lambda - kI * a + 0.5 * kI));
    }
    return L;
}

double ybe_residual(const ModelParameters& params, cplx l1, cplx l2) {
    const std::vector<int> dims = {2, 2, 2};
    Mat R12 = embed(r_matrix(params, l1 - l2), dims, {0, 1});
    Mat R13 = embed(r_matrix(params, l1), dims, {0, 2});
    Mat R23 = embed(r_matrix(params, l2), dims, {1, 2});
    return max_norm(R12 * R13 * R23 - R23 * R13 * R12);
}

double rll_residual(const ModelParameters& params, const SpinRepresentation& rep, cplx l1,
                    cplx l2, cplx perturbation) {
    const std::vector<int> dims = {2, 2, rep.dim};
    Mat La = defect_lax(params, rep, l1);
    Mat Lb = defect_lax(params, rep, l2);
    La(0, 0) += perturbation;
    Lb(0, 0) += perturbation;
    Mat R12 = embed(r_matrix(params, l1 - l2), dims, {0, 1});
    Mat L1 = embed(La, dims, {0, 2});
    Mat L2 = embed(Lb, dims, {1, 2});
    return max_norm(R12 * L1 * L2 - L2 * L1 * R12);
}

double regularity_check(const ModelParameters& params) {
    Mat R = r_matrix(params, 0.0);
    Mat P = permutation(2, 2);
    cplx s = (P.adjoint() * R).trace() / (P.adjoint() * P).trace();
    return max_norm(R - s * P);
}

}  // namespace defectbethe
