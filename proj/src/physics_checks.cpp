#include "defectbethe/physics_checks.hpp"

#include <algorithm>
#include <cmath>

#include "defectbethe/lax_operators.hpp"

namespace defectbethe {

double match_multisets(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw DomainError("match_multisets: sizes differ");
    const std::size_t n = a.size();
    struct Pair {
        double d;
        std::size_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) pairs.push_back({std::abs(a[i] - b[j]), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });
    std::vector<bool> ua(n, false), ub(n, false);
    double worst = 0.0;
    std::size_t matched = 0;
    for (std::size_t p = 0; p < pairs.size() && matched < n; ++p) {
        const Pair& P = pairs[p];
        if (ua[P.i] || ub[P.j]) continue;
        // another free candidate at (almost) the same distance but a different value
        if (P.d > 1e-10) {
            for (std::size_t j = 0; j < n; ++j) {
                if (ub[j] || j == P.j) continue;
                double d = std::abs(a[P.i] - b[j]);
                if (std::abs(d - P.d) < 1e-10 && std::abs(b[j] - b[P.j]) > 1e-10)
                    throw DegenerateSpectrum("ambiguous eigenvalue matching near " +
                                             fmt_cplx(a[P.i]));
            }
        }
        ua[P.i] = ub[P.j] = true;
        worst = std::max(worst, P.d);
        ++matched;
    }
    return worst;
}

SpectrumReport defect_spectrum_closed_form(const ModelParameters& params,
                                           const SpinRepresentation& rep, cplx lambda) {
    SpectrumReport out;
    const int n = rep.dim;
    if (params.is_rational()) {
        for (int k = 0; k < n + 1; ++k) out.closed_form.push_back(lambda + 0.5 * kI * double(n));
        for (int k = 0; k < n - 1; ++k) out.closed_form.push_back(lambda - 0.5 * kI * double(n));
    } else {
        double mu = params.mu();
        cplx top = std::sinh(mu * (lambda + 0.5 * kI * double(n)));
        out.closed_form.push_back(top);
        out.closed_form.push_back(top);
        for (int k = 1; k < n; ++k) {
            cplx a = std::cos(0.5 * mu * (n - 2 * k)) * std::sinh(lambda * mu);
            cplx r = 0.5 * std::sqrt(cplx(-1.0 - std::cos(mu * (2 * k - n)) + 2.0 * std::cos(n * mu)) +
                                     std::cosh(2.0 * lambda * mu) * (-1.0 + std::cos(mu * (n - 2 * k))));
            out.closed_form.push_back(a + r);
            out.closed_form.push_back(a - r);
        }
    }
    Eigen::ComplexEigenSolver<Mat> es(defect_lax(params, rep, lambda), false);
    for (int i = 0; i < es.eigenvalues().size(); ++i) out.numeric.push_back(es.eigenvalues()(i));
    out.residual = match_multisets(out.closed_form, out.numeric);
    out.discrepancy = out.residual > 1e-8;
    return out;
}

SpinSpectrumReport defect_spin_spectrum(const SpinRepresentation& rep) {
    SpinSpectrumReport out;
    const double S = rep.spin;
    const int n = rep.dim;
    out.closed_form.push_back(S + 0.5);
    for (int k = 1; k < n; ++k) {
        out.closed_form.push_back(S + 0.5 - k);
        out.closed_form.push_back(S + 0.5 - k);
    }
    out.closed_form.push_back(-S - 0.5);
    std::sort(out.closed_form.begin(), out.closed_form.end());
    Mat St = total_spin_operator(rep);
    Eigen::SelfAdjointEigenSolver<Mat> es(St);
    for (int i = 0; i < es.eigenvalues().size(); ++i) out.numeric.push_back(es.eigenvalues()(i));
    std::sort(out.numeric.begin(), out.numeric.end());
    for (std::size_t i = 0; i < out.numeric.size(); ++i)
        out.residual = std::max(out.residual, std::abs(out.numeric[i] - out.closed_form[i]));
    return out;
}

double matrix_unitarity_residual(const MatrixFn& T, cplx lambda) {
    Mat P = T(lambda) * T(-lambda);
    return max_norm(P - Mat::Identity(P.rows(), P.cols()));
}

double matrix_crossing_residual(const MatrixFn& T, cplx lambda, cplx shift) {
    Mat P = partial_transpose_aux(T(-lambda + shift)) * partial_transpose_aux(T(lambda + shift));
    return max_norm(P - Mat::Identity(P.rows(), P.cols()));
}

cplx crossing_shift(const ModelParameters& params) {
    if (!params.is_rational() && params.regime() == Regime::Attractive) return kI * params.gamma();
    return kI;
}

double rtt_residual(const ModelParameters& params, const DefectRegimeData& rd, cplx l1, cplx l2) {
    SpinRepresentation rep = transmission_rep(params, rd);
    const std::vector<int> dims = {2, 2, rep.dim};
    Mat S12 = embed(s_matrix(params, l1 - l2), dims, {0, 1});
    Mat T1 = embed(transmission_matrix(params, rd, rep, l1), dims, {0, 2});
    Mat T2 = embed(transmission_matrix(params, rd, rep, l2), dims, {1, 2});
    return max_norm(S12 * T1 * T2 - T2 * T1 * S12);
}

MIdentityReport appendix_b_m_identity(const SpinRepresentation& rep, cplx lambda) {
    MIdentityReport out;
    const double S = rep.spin;
    CasimirResult C = casimir(rep);
    if (rep.mu) {
        double mu = *rep.mu;
        out.scalar = std::sin(mu * (kI * lambda + S + 0.5)) * std::sin(mu * (-kI * lambda + S + 0.5));
        out.casimir_scalar = 0.5 * std::cos(2.0 * mu * kI * lambda) - 0.25 * C.scalar;
    } else {
        out.scalar = (kI * lambda + S + 0.5) * (-kI * lambda + S + 0.5);
        out.casimir_scalar = lambda * lambda + C.scalar;
    }
    Mat I = Mat::Identity(2 * rep.dim, 2 * rep.dim);
    out.unitarity_residual = max_norm(m_block(rep, lambda) * m_block(rep, -lambda) - out.scalar * I);
    out.crossing_residual = max_norm(partial_transpose_aux(m_block(rep, lambda + kI)) *
                                         partial_transpose_aux(m_block(rep, -lambda + kI)) -
                                     out.scalar * I);
    out.casimir_residual = std::abs(out.scalar - out.casimir_scalar);
    return out;
}

double scalar_unitarity_residual(const ModelParameters& params, const DefectRegimeData& rd,
                                 cplx lambda) {
    return std::abs(transmission_amplitude(params, rd, lambda).value *
                        transmission_amplitude(params, rd, -lambda).value -
                    1.0);
}

double scalar_crossing_residual(const ModelParameters& params, const DefectRegimeData& rd,
                                cplx lambda) {
    cplx s = crossing_shift(params);
    cplx TT = transmission_amplitude(params, rd, lambda + s).value *
              transmission_amplitude(params, rd, -lambda + s).value;
    const double St = rd.S_tilde;
    cplx f;
    if (params.is_rational()) {
        f = (kI * lambda + St + 0.5) * (-kI * lambda + St + 0.5) /
            ((kI * lambda + St - 0.5) * (-kI * lambda + St - 0.5));
    } else {
        double g = params.gamma(), mu = kPi * g;
        cplx u = params.regime() == Regime::Attractive ? lambda / g : lambda;
        f = std::sin(mu * (kI * u + St + 0.5)) * std::sin(mu * (-kI * u + St + 0.5)) /
            (std::sin(mu * (kI * u + St - 0.5)) * std::sin(mu * (-kI * u + St - 0.5)));
    }
    return std::abs(TT * f - 1.0);
}

}  // namespace defectbethe
