#include "defectbethe/spin_chain.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "defectbethe/lax_operators.hpp"

namespace defectbethe {

long max_hilbert_dim() {
    const char* env = std::getenv("DEFECTBETHE_MAX_DIM");
    if (!env || !*env) return 1L << 14;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0)
        throw DomainError(std::string("DEFECTBETHE_MAX_DIM must be a positive integer, got '") +
                          env + "'");
    return v;
}

namespace {

void validate(const ChainSpec& c) {
    if (c.N < 0) throw DomainError("chain: N must be nonnegative");
    if (c.defect_site < 1 || c.defect_site > c.N + 1)
        throw DomainError("chain: defect_site must lie in 1..N+1, got " +
                          std::to_string(c.defect_site));
    if (!(c.S >= 0.5) || !is_half_integer(c.S))
        throw DomainError("chain: defect spin must be a half-integer >= 1/2, got " +
                          std::to_string(c.S));
    long cap = max_hilbert_dim();
    long d = hilbert_dim(c);
    if (d > cap)
        throw DimensionCapExceeded("chain: Hilbert dimension " + std::to_string(d) +
                                   " exceeds cap " + std::to_string(cap) +
                                   " (set DEFECTBETHE_MAX_DIM to raise it)");
}

}  // namespace

long hilbert_dim(const ChainSpec& c) {
    long d = long(std::lround(2.0 * c.S)) + 1;
    for (int j = 0; j < c.N; ++j) {
        d *= 2;
        if (d > (1L << 40)) break;
    }
    return d;
}

std::vector<int> site_dims(const ChainSpec& c) {
    std::vector<int> dims(c.N + 1, 2);
    dims[c.defect_site - 1] = int(std::lround(2.0 * c.S)) + 1;
    return dims;
}

namespace {

struct Factors {
    std::vector<int> dims;  // aux first
    SpinRepresentation half, defect;
};

Factors factors(const ChainSpec& c) {
    Factors f;
    f.dims.push_back(2);
    for (int d : site_dims(c)) f.dims.push_back(d);
    f.half = build_rep(0.5, c.params);
    f.defect = build_rep(c.S, c.params);
    return f;
}

Mat local_lax(const ChainSpec& c, const Factors& f, int site, cplx lambda, bool deriv) {
    if (site == c.defect_site)
        return deriv ? defect_lax_derivative(c.params, f.defect, lambda - c.Theta)
                     : defect_lax(c.params, f.defect, lambda - c.Theta);
    return deriv ? r_matrix_derivative(c.params, lambda) : r_matrix(c.params, lambda);
}

}  // namespace

Mat monodromy(const ChainSpec& chain, cplx lambda) {
    validate(chain);
    Factors f = factors(chain);
    long D = 2 * hilbert_dim(chain);
    Mat M = Mat::Identity(D, D);
    for (int j = 1; j <= chain.N + 1; ++j)
        apply_local_left(M, local_lax(chain, f, j, lambda, false), f.dims, {0, j});
    return M;
}

Mat transfer(const ChainSpec& chain, cplx lambda) {
    return partial_trace_aux(monodromy(chain, lambda));
}

Mat transfer_derivative(const ChainSpec& chain, cplx lambda) {
    validate(chain);
    Factors f = factors(chain);
    long D = 2 * hilbert_dim(chain);
    Mat acc = Mat::Zero(D, D);
    for (int d = 1; d <= chain.N + 1; ++d) {
        Mat M = Mat::Identity(D, D);
        for (int j = 1; j <= chain.N + 1; ++j)
            apply_local_left(M, local_lax(chain, f, j, lambda, j == d), f.dims, {0, j});
        acc += M;
    }
    return partial_trace_aux(acc);
}

cplx regularity_scale(const ModelParameters& params) {
    return params.is_rational() ? kI : std::sinh(kI * params.mu());
}

Mat hamiltonian(const ChainSpec& chain) {
    validate(chain);
    if (chain.N < 2)
        throw DomainError("hamiltonian needs N >= 2 (the defect term couples sites n-1 and n+1)");
    Factors f = factors(chain);
    std::vector<int> dims = site_dims(chain);
    const int L = chain.N + 1;
    const int dd = chain.defect_site - 1;
    long D = hilbert_dim(chain);
    const int n = f.defect.dim;

    Mat Rdot = permutation(2, 2) * r_matrix_derivative(chain.params, 0.0);
    Mat H = Mat::Zero(D, D);
    for (int j = 0; j < L; ++j) {
        int a = j, b = (j + 1) % L;
        if (a == dd || b == dd) continue;
        H += embed(Rdot, dims, {a, b});
    }
    // three-site defect term on (n-1, n+1, n) with L acting on aux = n+1
    int right = (dd + 1) % L, left = (dd - 1 + L) % L;
    Mat Lt = defect_lax(chain.params, f.defect, -chain.Theta);
    Mat Ltd = defect_lax_derivative(chain.params, f.defect, -chain.Theta);
    Mat Lti = Lt.inverse();
    Mat I2 = Mat::Identity(2, 2);
    Mat In = Mat::Identity(n, n);
    Mat L3 = kron(I2, Lt), L3i = kron(I2, Lti);
    Mat R3 = kron(Rdot, In);
    Mat local = kron(I2, regularity_scale(chain.params) * Ltd * Lti) + L3 * R3 * L3i;
    H += embed(local, dims, {left, right, dd});
    return -H;
}

Mat hamiltonian_log_derivative(const ChainSpec& chain) {
    Mat t = transfer(chain, 0.0);
    Mat dt = transfer_derivative(chain, 0.0);
    return -regularity_scale(chain.params) * t.partialPivLu().solve(dt);
}

Vec pseudovacuum(const ChainSpec& chain) {
    validate(chain);
    Vec v = Vec::Zero(hilbert_dim(chain));
    v(0) = 1.0;
    return v;
}

Mat total_sz(const ChainSpec& chain) {
    validate(chain);
    std::vector<int> dims = site_dims(chain);
    long D = hilbert_dim(chain);
    Mat out = Mat::Zero(D, D);
    for (long i = 0; i < D; ++i) {
        long rem = i;
        double sz = 0.0;
        for (int s = int(dims.size()) - 1; s >= 0; --s) {
            int d = dims[s];
            int k = int(rem % d);
            rem /= d;
            sz += 0.5 * (d - 1) - k;
        }
        out(i, i) = sz;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bethe ansatz equations

cplx bae_e(const ModelParameters& params, double n, cplx x) {
    cplx p = x + 0.5 * kI * n, m = x - 0.5 * kI * n;
    if (params.is_rational()) {
        if (std::abs(m) < 1e-14) throw PoleError("e_n: pole at " + fmt_cplx(x));
        return p / m;
    }
    double mu = params.mu();
    cplx den = std::sinh(mu * m);
    if (std::abs(den) < 1e-14) throw PoleError("e_n: pole at " + fmt_cplx(x));
    return std::sinh(mu * p) / den;
}

namespace {

cplx dlog_e(const ModelParameters& params, double n, cplx x) {
    cplx p = x + 0.5 * kI * n, m = x - 0.5 * kI * n;
    if (params.is_rational()) return 1.0 / p - 1.0 / m;
    double mu = params.mu();
    return mu * (std::cosh(mu * p) / std::sinh(mu * p) - std::cosh(mu * m) / std::sinh(mu * m));
}

std::vector<cplx> ratios(const ChainSpec& c, const std::vector<cplx>& u) {
    const int M = int(u.size());
    std::vector<cplx> r(M);
    for (int i = 0; i < M; ++i) {
        cplx lhs = bae_e(c.params, 2.0 * c.S, u[i] - c.Theta) *
                   std::pow(bae_e(c.params, 1.0, u[i]), c.N);
        cplx rhs = 1.0;
        for (int j = 0; j < M; ++j)
            if (j != i) rhs *= bae_e(c.params, 2.0, u[i] - u[j]);
        r[i] = lhs / rhs;
    }
    return r;
}

double residual_of(const std::vector<cplx>& r) {
    double m = 0.0;
    for (cplx z : r) m = std::max(m, std::abs(z - 1.0));
    return m;
}

double max_abs(const std::vector<cplx>& u) {
    double m = 0.0;
    for (cplx z : u) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

std::vector<cplx> string_seeds(const ModelParameters& params, const StringDescriptor& s) {
    std::vector<cplx> out;
    cplx shift = 0.0;
    if (s.parity < 0) {
        if (params.is_rational()) throw DomainError("negative parity strings need the trigonometric model");
        shift = kI * kPi / (2.0 * params.mu());
    }
    for (int j = 1; j <= s.length; ++j)
        out.push_back(s.center + 0.5 * kI * double(s.length + 1 - 2 * j) + shift);
    return out;
}

std::vector<cplx> default_seeds(const ChainSpec& chain, int M) {
    std::vector<cplx> out;
    bool negative = !chain.params.is_rational() && chain.params.regime() == Regime::Attractive;
    for (int j = 1; j <= M; ++j) {
        StringDescriptor s{1, negative ? -1 : 1, 0.4 * (j - 0.5 * (M + 1))};
        auto seeds = string_seeds(chain.params, s);
        out.insert(out.end(), seeds.begin(), seeds.end());
    }
    return out;
}

BetheState solve_bae(const ChainSpec& chain, int M, std::vector<cplx> seeds, const BaeOptions& opt) {
    if (M < 1) throw DomainError("solve_bae needs M >= 1");
    if (seeds.empty()) seeds = default_seeds(chain, M);
    if (int(seeds.size()) != M)
        throw DomainError("solve_bae: expected " + std::to_string(M) + " seeds, got " +
                          std::to_string(seeds.size()));
    std::vector<cplx> u = seeds;
    auto check_distinct = [&](const std::vector<cplx>& v) {
        for (int i = 0; i < M; ++i)
            for (int j = i + 1; j < M; ++j)
                if (std::abs(v[i] - v[j]) < 1e-10)
                    throw SingularJacobian("solve_bae: coincident roots " + fmt_cplx(v[i]));
    };
    check_distinct(u);
    std::vector<cplx> r = ratios(chain, u);
    double res = residual_of(r);
    double best = res;
    int it = 0;
    for (; it < opt.max_iter && res > opt.tol; ++it) {
        Vec G(M);
        Mat J = Mat::Zero(M, M);
        for (int i = 0; i < M; ++i) {
            G(i) = std::log(r[i]);
            J(i, i) = dlog_e(chain.params, 2.0 * chain.S, u[i] - chain.Theta) +
                      double(chain.N) * dlog_e(chain.params, 1.0, u[i]);
            for (int j = 0; j < M; ++j) {
                if (j == i) continue;
                cplx d = dlog_e(chain.params, 2.0, u[i] - u[j]);
                J(i, i) -= d;
                J(i, j) += d;
            }
        }
        Eigen::FullPivLU<Mat> lu(J);
        if (lu.rank() < M) throw SingularJacobian("solve_bae: singular Jacobian");
        Vec step = -lu.solve(G);
        double t = 1.0;
        std::vector<cplx> trial(M);
        double trial_res = std::numeric_limits<double>::infinity();
        for (int h = 0; h < 12; ++h) {
            for (int i = 0; i < M; ++i) trial[i] = u[i] + t * step(i);
            try {
                trial_res = residual_of(ratios(chain, trial));
            } catch (const PoleError&) {
                trial_res = std::numeric_limits<double>::infinity();
            }
            if (trial_res < res) break;
            t *= 0.5;
        }
        if (!std::isfinite(trial_res)) break;
        u = trial;
        check_distinct(u);
        r = ratios(chain, u);
        res = residual_of(r);
        best = std::min(best, res);
        if (max_abs(u) > opt.divergence)
            throw NoConvergence("solve_bae: roots diverge (|lambda| = " +
                                    std::to_string(max_abs(u)) + "), best residual " +
                                    std::to_string(best),
                                best, max_abs(u));
    }
    if (res > opt.tol)
        throw NoConvergence("solve_bae: no convergence after " + std::to_string(it) +
                                " iterations, best residual " + std::to_string(best),
                            best, max_abs(u));
    BetheState st;
    st.M = M;
    st.roots = u;
    st.residual = res;
    st.iterations = it;
    for (cplx z : u) st.strings.push_back({1, 1, z.real()});
    return st;
}

double bae_residual(const ChainSpec& chain, const BetheState& state) {
    if (state.roots.empty()) return 0.0;
    return residual_of(ratios(chain, state.roots));
}

cplx aba_eigenvalue(const ChainSpec& chain, const std::vector<cplx>& roots, cplx lambda) {
    const auto& p = chain.params;
    auto f = [&](cplx x) { return p.is_rational() ? x : std::sinh(p.mu() * x); };
    double S = chain.S;
    cplx x = lambda - chain.Theta;
    cplx alpha = std::pow(f(lambda + kI), chain.N) * f(x + kI * S + 0.5 * kI);
    cplx delta = std::pow(f(lambda), chain.N) * f(x - kI * S + 0.5 * kI);
    for (cplx u : roots) {
        cplx v = u - 0.5 * kI;
        alpha *= f(lambda - v - kI) / f(lambda - v);
        delta *= f(lambda - v + kI) / f(lambda - v);
    }
    return alpha + delta;
}

}  // namespace defectbethe
