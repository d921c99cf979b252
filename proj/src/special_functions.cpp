#include "defectbethe/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <queue>
#include <sstream>

namespace defectbethe {

std::string fmt_cplx(cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "(%.12g%+.12gi)", z.real(), z.imag());
    return buf;
}

namespace {

// Lanczos approximation, g = 671/128, 14 terms (Numerical Recipes 3rd ed.)
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,     -0.491913816097620199,
    .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,
    -.210264441724104883e-3, .217439618115212643e-3,
    -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

cplx log_gamma_lanczos(cplx x) {
    cplx tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    cplx ser = 0.999999999999997092;
    cplx y = x;
    for (double c : kLanczos) {
        y += 1.0;
        ser += c / y;
    }
    return tmp + std::log(2.5066282746310005 * ser / x);
}

// log sin(pi z), stable for large |Im z|
cplx log_sin_pi(cplx z) {
    if (z.imag() > 20.0) {
        cplx e = std::exp(2.0 * kI * kPi * z);
        return -kI * kPi * z + std::log(1.0 - e) - std::log(-2.0 * kI);
    }
    if (z.imag() < -20.0) {
        cplx e = std::exp(-2.0 * kI * kPi * z);
        return kI * kPi * z + std::log(1.0 - e) - std::log(2.0 * kI);
    }
    return std::log(std::sin(kPi * z));
}

constexpr std::array<double, 31> kBernoulli = {
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
    0.0,
    854513.0 / 138.0,
    0.0,
    -236364091.0 / 2730.0,
    0.0,
    8553103.0 / 6.0,
    0.0,
    -23749461029.0 / 870.0,
    0.0,
    8615841276005.0 / 14322.0};

double binom(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

cplx log1p_c(cplx w) {
    cplx u = 1.0 + w;
    if (u == cplx(1.0, 0.0)) return w;
    return std::log(u) * w / (u - 1.0);
}

bool near_pole(cplx x) {
    if (std::abs(x.imag()) > 1e-12 || x.real() > 0.5) return false;
    double r = std::round(x.real());
    return r <= 0.0 && std::abs(x - cplx(r, 0.0)) < 1e-12;
}

}  // namespace

cplx log_gamma(cplx z) {
    if (near_pole(z)) throw PoleError("log_gamma: pole at z = " + fmt_cplx(z));
    if (z.real() < 0.5) {
        return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
    }
    return log_gamma_lanczos(z);
}

double bernoulli_number(int n) {
    if (n < 0 || n > 30) throw DomainError("bernoulli_number: n out of table range");
    return kBernoulli[n];
}

cplx bernoulli_poly(int n, cplx x) {
    if (n < 0 || n > 30) throw DomainError("bernoulli_poly: n out of table range");
    cplx s = 0.0;
    for (int k = 0; k <= n; ++k) {
        if (kBernoulli[k] == 0.0) continue;
        s += binom(n, k) * kBernoulli[k] * std::pow(x, n - k);
    }
    return s;
}

double hurwitz_zeta(int s, double q) {
    if (s < 2 || q <= 0.0) throw DomainError("hurwitz_zeta: need s >= 2, q > 0");
    double acc = 0.0;
    while (q < 12.0) {
        acc += std::pow(q, -s);
        q += 1.0;
    }
    acc += std::pow(q, 1 - s) / (s - 1) + 0.5 * std::pow(q, -s);
    double rising = s;  // s (s+1) ... (s+2j-2)
    double fact = 2.0;  // (2j)!
    double qp = std::pow(q, -s - 1);
    for (int j = 1; j <= 12; ++j) {
        acc += kBernoulli[2 * j] / fact * rising * qp;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
        qp /= q * q;
    }
    return acc;
}

double digamma(double x) {
    if (x <= 0.0) throw DomainError("digamma: x must be positive");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double x2 = 1.0 / (x * x);
    double p = x2;
    acc += std::log(x) - 0.5 / x;
    for (int j = 1; j <= 10; ++j) {
        acc -= kBernoulli[2 * j] / (2 * j) * p;
        p *= x2;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Gamma products

GammaProductSpec::GammaProductSpec(std::vector<GammaFactor> factors, Regularization reg)
    : reg_(reg) {
    for (const auto& f : factors) {
        if (!(f.b > 0.0) || !std::isfinite(f.b))
            throw DomainError("GammaProductSpec: step b must be positive");
        if (f.sign != 1 && f.sign != -1)
            throw DomainError("GammaProductSpec: sign must be +1 or -1");
    }
    // factorwise cancellation of identical numerator/denominator pairs
    std::vector<bool> used(factors.size(), false);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (used[i]) continue;
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
            if (used[j] || factors[i].sign == factors[j].sign) continue;
            if (factors[i].base() == factors[j].base() && factors[i].b == factors[j].b) {
                used[i] = used[j] = true;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (!used[i]) factors_.push_back(factors[i]);

    double scale = 1.0;
    cplx s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (const auto& f : factors_) {
        double lb = std::log(f.b);
        s0 += double(f.sign);
        s1 += f.sign * f.b;
        s2 += f.sign * f.b * lb;
        s3 += double(f.sign) * f.base();
        s4 += double(f.sign) * (f.base() - 0.5) * lb;
        scale = std::max({scale, std::abs(f.base()), f.b});
    }
    double tol = 1e-9 * scale;
    if (std::abs(s0) > tol || std::abs(s1) > tol || std::abs(s2) > tol || std::abs(s3) > tol ||
        std::abs(s4) > tol)
        throw DomainError("GammaProductSpec: numerator and denominator are not balanced");
    if (reg_ == Regularization::None && std::abs(d1()) > tol * scale)
        throw DomainError("GammaProductSpec: 1/k term does not cancel (d1 = " + fmt_cplx(d1()) +
                          "); product diverges without regularization");
    if (reg_ == Regularization::ArgumentScale) {
        for (const auto& f : factors_)
            if (f.b != factors_.front().b)
                throw DomainError("GammaProductSpec: ArgumentScale needs a common step b");
    }
}

cplx GammaProductSpec::d1() const {
    cplx d = 0.0;
    for (const auto& f : factors_) d += double(f.sign) * bernoulli_poly(2, f.base()) / (2.0 * f.b);
    return d;
}

GammaProductSpec GammaProductSpec::inverted() const {
    std::vector<GammaFactor> fs = factors_;
    for (auto& f : fs) f.sign = -f.sign;
    return GammaProductSpec(std::move(fs), reg_);
}

AmplitudeValue gamma_product(const GammaProductSpec& spec, double tol,
                             const GammaProductOptions& opt) {
    if (!(tol > 0.0)) throw DomainError("gamma_product: tol must be positive");
    const auto& fs = spec.factors();
    if (fs.empty()) return {cplx(1.0, 0.0), 0.0, 0};

    double amax = 0.0, bmin = fs.front().b;
    for (const auto& f : fs) {
        amax = std::max(amax, std::abs(f.base()));
        bmin = std::min(bmin, f.b);
        // poles only where the real part is nonpositive
        for (int k = 0;; ++k) {
            cplx x = f.base() + f.b * double(k);
            if (x.real() > 0.5) break;
            if (near_pole(x))
                throw PoleError("gamma_product: factor hits a Gamma pole at k = " +
                                std::to_string(k) + ", argument " + fmt_cplx(x));
        }
    }
    int K = std::max(opt.min_terms, int(std::ceil(50.0 * amax / bmin)));
    K = std::min(K, opt.max_terms);

    cplx total = 0.0;
    double magnitude = 0.0;
    std::vector<cplx> xs(fs.size());
    for (int k = 0; k < K; ++k) {
        bool stirling = k > 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            xs[i] = fs[i].base() + fs[i].b * double(k);
            if (std::abs(xs[i]) < 12.0 || xs[i].real() <= 0.0 ||
                std::abs(fs[i].base()) > 0.5 * fs[i].b * k)
                stirling = false;
        }
        cplx term = 0.0;
        if (stirling) {
            // Stirling series with the k-dependent pieces that cancel by
            // balance removed exactly
            for (std::size_t i = 0; i < fs.size(); ++i) {
                const auto& f = fs[i];
                cplx x = xs[i];
                cplx t = (x - 0.5) * log1p_c(f.base() / (f.b * double(k))) - f.base() +
                         (f.base() - 0.5) * std::log(f.b);
                cplx xinv = 1.0 / x, xp = xinv, x2 = xinv * xinv;
                for (int j = 1; j <= 10; ++j) {
                    t += kBernoulli[2 * j] / (2.0 * j * (2.0 * j - 1.0)) * xp;
                    xp *= x2;
                }
                term += double(f.sign) * t;
            }
            // the b*k*log(b) pieces: sum s b log b = 0 by balance
        } else {
            for (std::size_t i = 0; i < fs.size(); ++i)
                term += double(fs[i].sign) * log_gamma(xs[i]);
        }
        magnitude += std::abs(term);
        total += term;
    }

    // tail: sum_{k >= K} sum_n d_n / k^n
    cplx tail = 0.0;
    double last = 0.0;
    for (int n = 2; n < opt.tail_orders; ++n) {
        cplx dn = 0.0;
        for (const auto& f : fs)
            dn += double(f.sign) * ((n + 1) % 2 == 0 ? 1.0 : -1.0) * bernoulli_poly(n + 1, f.base()) /
                  (double(n) * double(n + 1) * std::pow(f.b, n));
        cplx piece = dn * hurwitz_zeta(n, double(K));
        tail += piece;
        last = std::abs(piece);
    }
    if (spec.regularization() == Regularization::ArgumentScale) {
        // sum_{k>=K} 1/k regularized to -psi(K); the divergence is removed
        // against log(b k) of the argument scale
        tail += spec.d1() * (-digamma(double(K)) - std::log(fs.front().b));
    }
    double err_log = last + 4e-16 * (magnitude + std::abs(total)) * double(fs.size());
    cplx value = std::exp(total + tail);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw NonConvergence("gamma_product: non-finite value");
    if (err_log > tol)
        throw NonConvergence("gamma_product: tail estimate " + std::to_string(err_log) +
                             " exceeds tol at K = " + std::to_string(K));
    return {value, err_log * std::abs(value), K};
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const RealFn& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        resk += kWgk[j] * (fv1[j] + fv2[j]);
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * (fv1[j] + fv2[j]);
    }
    double mean = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    double err = std::abs((resk - resg) * h);
    resasc *= std::abs(h);
    resabs *= std::abs(h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > 0.0) err = std::max(err, 50.0 * 2.2e-16 * resabs);
    return {a, b, resk * h, err};
}

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, double tol, int max_intervals) {
    QuadResult out;
    if (a == b) return out;
    int initial = std::max(1, std::min(64, int(std::ceil(std::abs(b - a) / 4.0))));
    std::priority_queue<Panel> heap;
    double total = 0.0, err = 0.0;
    double w = (b - a) / initial;
    for (int i = 0; i < initial; ++i) {
        Panel p = gk15(f, a + i * w, i + 1 == initial ? b : a + (i + 1) * w);
        total += p.value;
        err += p.err;
        heap.push(p);
    }
    out.evals = 15 * initial;
    while (err > tol && int(heap.size()) < max_intervals) {
        Panel p = heap.top();
        heap.pop();
        double m = 0.5 * (p.a + p.b);
        if (m <= p.a || m >= p.b) {
            heap.push(p);
            break;
        }
        Panel l = gk15(f, p.a, m), r = gk15(f, m, p.b);
        out.evals += 30;
        total += l.value + r.value - p.value;
        err += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
    }
    // recompute sums to avoid drift from incremental updates
    total = 0.0;
    err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().err;
        heap.pop();
    }
    out.value = total;
    out.err = err;
    return out;
}

double kernel_cutoff(const RealFn& kernel, double tol, double omega_max) {
    double w = 2.0;
    double floor = std::max(tol * 1e-2, 1e-300);
    while (w <= omega_max) {
        if (std::abs(kernel(w)) < floor && std::abs(kernel(1.5 * w)) < floor &&
            std::abs(kernel(2.0 * w)) < floor)
            return w;
        w *= 1.5;
    }
    throw NonConvergence("kernel does not decay below " + std::to_string(floor) +
                         " before omega = " + std::to_string(omega_max) +
                         " (parameters at a regime boundary?)");
}

namespace {

QuadResult oscillatory(const RealFn& g, double lambda, double cutoff, const FourierOptions& opt) {
    // split so that each panel holds a bounded number of oscillations
    int panels = std::max(1, int(std::ceil(cutoff * std::abs(lambda) / (4.0 * kPi))));
    QuadResult acc;
    double w = cutoff / panels;
    double ptol = opt.tol / panels;
    for (int i = 0; i < panels; ++i) {
        QuadResult r = integrate(g, i * w, i + 1 == panels ? cutoff : (i + 1) * w, ptol,
                                 opt.max_intervals);
        acc.value += r.value;
        acc.err += r.err;
        acc.evals += r.evals;
    }
    return acc;
}

}  // namespace

AmplitudeValue fourier_log_integral(const RealFn& kernel, double lambda, const FourierOptions& opt) {
    if (lambda == 0.0) return {cplx(1.0, 0.0), 0.0, 0};
    double cutoff = kernel_cutoff(kernel, opt.tol, opt.omega_max);
    RealFn g = [&](double w) {
        if (w == 0.0) return lambda * kernel(0.0);
        return std::sin(w * lambda) * kernel(w) / w;
    };
    QuadResult r = oscillatory(g, lambda, cutoff, opt);
    if (!(r.err <= 100.0 * opt.tol))
        throw NonConvergence("fourier_log_integral: quadrature error " + std::to_string(r.err) +
                             " above tolerance");
    cplx value = std::exp(2.0 * kI * r.value);
    // tail beyond the cutoff is bounded by the kernel floor
    double err = 2.0 * (r.err + opt.tol * 1e-2) * std::abs(value);
    return {value, err, r.evals};
}

QuadResult inverse_fourier_even(const RealFn& kernel, double lambda, const FourierOptions& opt) {
    double cutoff = kernel_cutoff(kernel, opt.tol, opt.omega_max);
    RealFn g = [&](double w) { return std::cos(w * lambda) * kernel(w); };
    QuadResult r = oscillatory(g, lambda, cutoff, opt);
    r.value /= kPi;
    r.err /= kPi;
    return r;
}

QuadResult sine_transform_over_omega(const RealFn& kernel, double lambda, const FourierOptions& opt) {
    if (lambda == 0.0) return {};
    double cutoff = kernel_cutoff(kernel, opt.tol, opt.omega_max);
    RealFn g = [&](double w) {
        if (w == 0.0) return lambda * kernel(0.0);
        return std::sin(w * lambda) * kernel(w) / w;
    };
    QuadResult r = oscillatory(g, lambda, cutoff, opt);
    r.value *= 2.0;
    r.err *= 2.0;
    return r;
}

// ---------------------------------------------------------------------------
// Integral identities

IdentityCheck verify_gamma_integral_identity(GammaIdentity kind, double mu, double beta) {
    IdentityCheck out;
    const double tol = 1e-13;
    if (kind == GammaIdentity::Use1) {
        if (!(mu > -1.0)) throw DomainError("use1 needs mu_param > -1, got " + std::to_string(mu));
        // Frullani-regularized form: the e^{-2w} subtraction has zero
        // contribution to the finite part
        RealFn f = [mu](double w) {
            if (w == 0.0) return 0.5 * (2.0 - 0.5 * mu);
            double a = std::exp(-0.5 * mu * w) / std::cosh(0.5 * w);
            if (!std::isfinite(a)) a = 2.0 * std::exp(-0.5 * (mu + 1.0) * w);
            return 0.5 * (a - std::exp(-2.0 * w)) / w;
        };
        double rate = std::min(0.5 * (mu + 1.0), 2.0);
        double cutoff = 40.0 / rate;
        QuadResult r = integrate(f, 0.0, cutoff, tol);
        out.lhs = r.value;
        out.rhs = (log_gamma(cplx(0.25 * (mu + 1.0))) - log_gamma(cplx(0.25 * (mu + 3.0)))).real();
    } else {
        if (!(mu > 0.0) || !(beta > 0.0))
            throw DomainError("use2 needs mu_param > 0 and beta_param > 0");
        const double h = 0.5;
        RealFn f = [mu, beta, h](double x) {
            if (x == 0.0) return 0.25 * h * h * h / beta;
            double d = -std::expm1(-h * x);
            double den = -std::expm1(-2.0 * x) * -std::expm1(-2.0 * beta * x);
            return 0.25 * 4.0 * std::exp(-(mu + 1.0 + beta) * x) * d * d * d / (x * den);
        };
        double cutoff = 40.0 / (mu + 1.0 + beta);
        QuadResult r = integrate(f, 0.0, cutoff, tol);
        out.lhs = r.value;
        // third finite difference in mu of log prod_k Gamma(mu/2 + beta/2 + k beta + 1/2)
        std::vector<GammaFactor> fs;
        const int weight[4] = {1, -3, 3, -1};
        for (int j = 0; j < 4; ++j) {
            double c = 0.5 * (mu + j * h) + 0.5 * beta + 0.5;
            for (int rep = 0; rep < std::abs(weight[j]); ++rep)
                fs.push_back({weight[j] > 0 ? 1 : -1, cplx(c, 0.0), beta, 0.0});
        }
        AmplitudeValue v = gamma_product(GammaProductSpec(fs), 1e-10);
        out.rhs = std::log(std::abs(v.value));
    }
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

}  // namespace defectbethe
