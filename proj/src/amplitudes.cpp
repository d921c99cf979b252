#include "defectbethe/amplitudes.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>

namespace defectbethe {

namespace {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// y strictly inside a branch window of width `width`; returns the branch index
int branch_index(double y, double width, const char* what) {
    double q = y / width;
    int m = int(std::floor(q));
    if (std::abs(q - std::round(q)) < 1e-12)
        throw DomainError(std::string(what) + ": 2S = " + num(y) +
                          " sits on a branch boundary (multiple of " + num(width) + ")");
    return m;
}

}  // namespace

DefectRegimeData make_regime_data(const ModelParameters& params, double S, double Theta,
                                  double Lambda) {
    if (!(S > 0.0) || !std::isfinite(S))
        throw DomainError("defect spin must be positive, got S = " + num(S));
    DefectRegimeData rd;
    rd.S = S;
    rd.Theta = Theta;
    rd.Lambda = Lambda;
    double y = 2.0 * S;
    if (params.is_rational()) {
        rd.S_tilde = S - 0.5;
        return rd;
    }
    double nu = params.nu(), g = params.gamma();
    if (params.regime() == Regime::Repulsive) {
        rd.m = branch_index(y, 2.0 * nu, "repulsive branch");
        rd.S_tilde = S - rd.m - 0.5;
    } else {
        rd.m = branch_index(y, nu, "attractive branch");
        rd.S_tilde = rd.m;
        rd.xi = S + 0.5 * g;
        rd.eta1 = kI * kPi / g * (Lambda + rd.xi);
        rd.eta2 = kI * kPi / g * (Lambda - rd.xi);
    }
    return rd;
}

cplx elementary_ratio(RatioKind kind, const ModelParameters& params, double n, cplx lambda) {
    cplx p = lambda + 0.5 * kI * n, m = lambda - 0.5 * kI * n;
    cplx top, bot;
    if (params.is_rational()) {
        if (kind == RatioKind::G) throw DomainError("g_n is defined for the trigonometric model only");
        top = p;
        bot = m;
    } else {
        double mu = params.mu();
        if (kind == RatioKind::E) {
            top = std::sinh(mu * p);
            bot = std::sinh(mu * m);
        } else {
            top = std::cosh(mu * p);
            bot = std::cosh(mu * m);
        }
    }
    if (std::abs(bot) < 1e-14)
        throw PoleError("elementary ratio: pole at lambda = " + fmt_cplx(lambda) + ", n = " + num(n));
    return top / bot;
}

// ---------------------------------------------------------------------------
// Kernels

namespace {

struct Hyp {
    bool sinh;
    double a;
};

// coeff * prod sinh/cosh(a w) / prod sinh/cosh(a w) for w >= 0, overflow-free
double hyp_ratio(double w, double coeff, std::initializer_list<Hyp> top,
                 std::initializer_list<Hyp> bottom) {
    w = std::abs(w);
    if (w < 1e-7) {
        int power = 0;
        double v = coeff;
        for (const Hyp& h : top) {
            double x = h.a * w;
            if (h.sinh) {
                v *= h.a * (1.0 + x * x / 6.0);
                ++power;
            } else {
                v *= 1.0 + 0.5 * x * x;
            }
        }
        for (const Hyp& h : bottom) {
            double x = h.a * w;
            if (h.sinh) {
                v /= h.a * (1.0 + x * x / 6.0);
                --power;
            } else {
                v /= 1.0 + 0.5 * x * x;
            }
        }
        if (power < 0) throw DomainError("kernel is singular at w = 0");
        return v * std::pow(w, power);
    }
    double log_mag = 0.0, sign = coeff < 0 ? -1.0 : 1.0;
    if (coeff == 0.0) return 0.0;
    log_mag += std::log(std::abs(coeff));
    auto piece = [&](const Hyp& h) {
        double aa = std::abs(h.a);
        if (h.sinh) {
            if (h.a < 0) sign = -sign;
            return aa * w + std::log(-std::expm1(-2.0 * aa * w)) - std::log(2.0);
        }
        return aa * w + std::log1p(std::exp(-2.0 * aa * w)) - std::log(2.0);
    };
    for (const Hyp& h : top) {
        if (h.sinh && h.a == 0.0) return 0.0;
        log_mag += piece(h);
    }
    for (const Hyp& h : bottom) {
        if (h.sinh && h.a == 0.0) throw DomainError("kernel denominator vanishes identically");
        log_mag -= piece(h);
    }
    return sign * std::exp(log_mag);
}

double rational_fermi(double w, double rate) {
    // e^{-rate w} / (1 + e^{-w})
    w = std::abs(w);
    return std::exp(-rate * w) / (1.0 + std::exp(-w));
}

void require_trig(const ModelParameters& p, const char* what) {
    if (p.is_rational()) throw DomainError(std::string(what) + " needs the trigonometric model");
}

void require_attractive(const ModelParameters& p, const char* what) {
    require_trig(p, what);
    if (p.regime() != Regime::Attractive)
        throw DomainError(std::string(what) + " is defined in the attractive regime only");
}

}  // namespace

KernelName kernel_from_string(const std::string& s) {
    if (s == "a") return KernelName::A;
    if (s == "b") return KernelName::B;
    if (s == "sigma0") return KernelName::Sigma0;
    if (s == "r_s") return KernelName::RS;
    if (s == "r_t") return KernelName::RT;
    if (s == "sigma0_breather") return KernelName::BreatherSigma0;
    if (s == "r_b") return KernelName::RB;
    if (s == "t_b") return KernelName::TB;
    if (s == "R") return KernelName::BreatherR;
    if (s == "B") return KernelName::BreatherB;
    throw DomainError("unknown kernel '" + s + "'");
}

std::string to_string(KernelName k) {
    switch (k) {
        case KernelName::A: return "a";
        case KernelName::B: return "b";
        case KernelName::Sigma0: return "sigma0";
        case KernelName::RS: return "r_s";
        case KernelName::RT: return "r_t";
        case KernelName::BreatherSigma0: return "sigma0_breather";
        case KernelName::RB: return "r_b";
        case KernelName::TB: return "t_b";
        case KernelName::BreatherR: return "R";
        case KernelName::BreatherB: return "B";
    }
    return "?";
}

RealFn make_kernel(KernelName name, const ModelParameters& params, double extra) {
    const bool rat = params.is_rational();
    switch (name) {
        case KernelName::A: {
            double n = extra;
            if (!(n > 0.0)) throw DomainError("a_n needs n > 0, got " + num(n));
            if (rat) return [n](double w) { return std::exp(-0.5 * n * std::abs(w)); };
            double nu = params.nu();
            int m = branch_index(n, 2.0 * nu, "a_n window");
            double c = 0.5 * ((2 * m + 1) * nu - n);
            return [c, nu](double w) { return hyp_ratio(w, 1.0, {{true, c}}, {{true, 0.5 * nu}}); };
        }
        case KernelName::B: {
            require_attractive(params, "b_n");
            double n = extra, nu = params.nu();
            if (!(n > 0.0)) throw DomainError("b_n needs n > 0, got " + num(n));
            int m = branch_index(n, nu, "b_n window");
            double c = 0.5 * (n - 2.0 * m * nu);
            return [c, nu](double w) { return hyp_ratio(w, -1.0, {{true, c}}, {{true, 0.5 * nu}}); };
        }
        case KernelName::Sigma0: {
            if (rat || params.regime() == Regime::Repulsive)
                return [](double w) { return rational_fermi(w, 0.5); };
            double g = params.nu() - 1.0;
            return [g](double w) { return hyp_ratio(w, 0.5, {}, {{false, 0.5 * g}}); };
        }
        case KernelName::RS: {
            if (rat) return [](double w) { return rational_fermi(w, 1.0); };
            double nu = params.nu();
            if (params.regime() == Regime::Repulsive)
                return [nu](double w) {
                    return hyp_ratio(w, 0.5, {{true, 0.5 * (nu - 2.0)}},
                                     {{true, 0.5 * (nu - 1.0)}, {false, 0.5}});
                };
            return [nu](double w) {
                return hyp_ratio(w, -0.5, {{true, 0.5 * (nu - 2.0)}},
                                 {{true, 0.5}, {false, 0.5 * (nu - 1.0)}});
            };
        }
        case KernelName::RT: {
            double y = extra;
            if (!(y > 0.0)) throw DomainError("r_t needs y = 2S > 0, got " + num(y));
            if (rat) return [y](double w) { return rational_fermi(w, 0.5 * y); };
            double nu = params.nu();
            if (params.regime() == Regime::Repulsive) {
                int m = branch_index(y, 2.0 * nu, "repulsive r_t");
                double c = 0.5 * ((2 * m + 1) * nu - y);
                return [c, nu](double w) {
                    return hyp_ratio(w, 0.5, {{true, c}}, {{true, 0.5 * (nu - 1.0)}, {false, 0.5}});
                };
            }
            int m = branch_index(y, nu, "attractive r_t");
            if (m >= 2)
                throw DomainError("attractive r_t: branch m = " + std::to_string(m) +
                                  " (2S = " + num(y) + ", nu = " + num(nu) +
                                  ") gives a non-decaying kernel; only m in {0, 1} is supported");
            double c = 0.5 * (y - 2.0 * m * nu);
            return [c, nu](double w) {
                return hyp_ratio(w, 0.5, {{true, c}}, {{true, 0.5}, {false, 0.5 * (nu - 1.0)}});
            };
        }
        case KernelName::BreatherSigma0: {
            require_attractive(params, "breather density");
            double nu = params.nu();
            if (!(nu > 1.5)) throw DomainError("breather density needs nu > 3/2, got " + num(nu));
            return [nu](double w) {
                return hyp_ratio(w, 1.0, {{false, 0.5 * (nu - 2.0)}}, {{false, 0.5 * (nu - 1.0)}});
            };
        }
        case KernelName::RB: {
            require_attractive(params, "r_b");
            double nu = params.nu();
            if (!(nu > 2.0)) throw DomainError("r_b needs nu > 2, got " + num(nu));
            return [nu](double w) {
                return hyp_ratio(w, -1.0, {{false, 0.5 * (nu - 3.0)}}, {{false, 0.5 * (nu - 1.0)}});
            };
        }
        case KernelName::TB: {
            require_attractive(params, "t_b");
            double nu = params.nu(), y = extra;
            if (!(y > 0.0 && y < 2.0 * (nu - 1.0)))
                throw DomainError("t_b needs 0 < 2S < 2 gamma, got 2S = " + num(y) +
                                  ", gamma = " + num(nu - 1.0));
            return [nu, y](double w) {
                return hyp_ratio(w, 1.0, {{false, 0.5 * (nu - y - 1.0)}},
                                 {{false, 0.5 * (nu - 1.0)}});
            };
        }
        case KernelName::BreatherR: {
            require_attractive(params, "R");
            double nu = params.nu();
            if (!(nu > 2.0)) throw DomainError("R needs nu > 2, got " + num(nu));
            return [nu](double w) {
                return hyp_ratio(w, -1.0, {{false, 0.5}}, {{false, 0.5 * (nu - 1.0)}});
            };
        }
        case KernelName::BreatherB: {
            require_attractive(params, "B");
            double nu = params.nu(), y = extra;
            if (!(y > 0.0 && y < nu))
                throw DomainError("B needs 0 < 2S < nu, got 2S = " + num(y));
            return [nu, y](double w) {
                return hyp_ratio(w, 0.5, {{true, 0.5 * y}}, {{true, 0.5}, {false, 0.5 * (nu - 1.0)}});
            };
        }
    }
    throw DomainError("unknown kernel");
}

double kernel_hat(KernelName name, double omega, const ModelParameters& params, double extra) {
    return make_kernel(name, params, extra)(omega);
}

// ---------------------------------------------------------------------------
// Densities and dispersion

namespace {

// sigma0-hat = 1/(2 cosh(c w/2))
double sigma0_width(const ModelParameters& params) {
    if (params.is_rational() || params.regime() == Regime::Repulsive) return 1.0;
    return params.nu() - 1.0;
}

void check_quad(const QuadResult& r, const char* what) {
    if (!(r.err <= 1e-8))
        throw NonConvergence(std::string(what) + ": quadrature error " + num(r.err));
}

}  // namespace

Dispersion dispersion(DispersionKind kind, const ModelParameters& params, double lambda) {
    Dispersion d;
    if (kind == DispersionKind::Hole) {
        double c = sigma0_width(params);
        double x = kPi * lambda / c;
        d.energy = 1.0 / (2.0 * c * std::cosh(x));
        d.momentum = 2.0 * std::atan(std::tanh(0.5 * x));
        d.closed_form = true;
        return d;
    }
    RealFn k = make_kernel(KernelName::BreatherSigma0, params);
    QuadResult e = inverse_fourier_even(k, lambda);
    QuadResult p = sine_transform_over_omega(k, lambda);
    check_quad(e, "breather energy");
    check_quad(p, "breather momentum");
    d.energy = e.value;
    d.momentum = p.value;
    d.err = std::max(e.err, p.err);
    return d;
}

double state_density(const ModelParameters& params, const DefectRegimeData& rd,
                     const std::vector<double>& holes, double lambda, int N) {
    if (N <= 0) throw DomainError("state_density needs N > 0");
    double c = sigma0_width(params);
    double sigma0 = 1.0 / (2.0 * c * std::cosh(kPi * lambda / c));
    RealFn rs = make_kernel(KernelName::RS, params);
    RealFn rt = make_kernel(KernelName::RT, params, 2.0 * rd.S);
    double corr = 0.0;
    for (double h : holes) {
        QuadResult r = inverse_fourier_even(rs, lambda - h);
        check_quad(r, "r_s transform");
        corr += r.value;
    }
    QuadResult r = inverse_fourier_even(rt, lambda - rd.Theta);
    check_quad(r, "r_t transform");
    corr += r.value;
    return sigma0 + corr / double(N);
}

// ---------------------------------------------------------------------------
// Soliton amplitudes

namespace {

GammaFactor gf(int sign, cplx base, double b) { return GammaFactor{sign, base, b, 0.0}; }

AmplitudeValue product_value(std::vector<GammaFactor> fs, double tol,
                             Regularization reg = Regularization::None) {
    return gamma_product(GammaProductSpec(std::move(fs), reg), tol);
}

// Gamma(a1) Gamma(a2) / (Gamma(b1) Gamma(b2))
cplx gamma_ratio(cplx a1, cplx a2, cplx b1, cplx b2) {
    return std::exp(log_gamma(a1) + log_gamma(a2) - log_gamma(b1) - log_gamma(b2));
}

}  // namespace

AmplitudeValue kink_S_amplitude(const ModelParameters& params, cplx lambda, double tol) {
    if (params.is_rational()) {
        cplx h = 0.5 * kI * lambda;
        AmplitudeValue v;
        v.value = gamma_ratio(-h + 0.5, h + 1.0, -h + 1.0, h + 0.5);
        v.err_estimate = 1e-14 * std::abs(v.value);
        return v;
    }
    double g = params.gamma();
    cplx z = params.regime() == Regime::Repulsive ? kI * g * lambda : kI * lambda;
    double b = 2.0 * g;
    return product_value({gf(+1, z + 2.0 * g, b), gf(+1, z + 1.0, b), gf(-1, z + g, b),
                          gf(-1, z + g + 1.0, b), gf(+1, -z + g, b), gf(+1, -z + g + 1.0, b),
                          gf(-1, -z + 2.0 * g, b), gf(-1, -z + 1.0, b)},
                         tol);
}

AmplitudeValue kink_S_integral(const ModelParameters& params, double lambda,
                               const FourierOptions& opt) {
    return fourier_log_integral(make_kernel(KernelName::RS, params), lambda, opt);
}

Mat s_matrix(const ModelParameters& params, cplx lambda) {
    cplx a, b, c;
    if (params.is_rational()) {
        a = kI * lambda + 1.0;
        b = kI * lambda;
        c = 1.0;
    } else {
        double g = params.gamma();
        if (params.regime() == Regime::Repulsive) {
            a = std::sin(kPi * g * (kI * lambda + 1.0));
            b = std::sin(kI * kPi * g * lambda);
        } else {
            a = std::sin(kPi * (kI * lambda + g));
            b = std::sin(kI * kPi * lambda);
        }
        c = std::sin(kPi * g);
    }
    if (std::abs(a) < 1e-14) throw PoleError("s_matrix: a(lambda) vanishes at " + fmt_cplx(lambda));
    cplx pre = kink_S_amplitude(params, lambda).value / a;
    Mat S = Mat::Zero(4, 4);
    S(0, 0) = S(3, 3) = a;
    S(1, 1) = S(2, 2) = b;
    S(1, 2) = S(2, 1) = c;
    return pre * S;
}

namespace {

void require_attractive_branch(const ModelParameters& params, const DefectRegimeData& rd) {
    if (!params.is_rational() && params.regime() == Regime::Attractive && rd.m >= 2)
        throw DomainError("attractive transmission: branch m = " + std::to_string(rd.m) +
                          " (S = " + num(rd.S) + ") is not supported; only m in {0, 1}");
}

}  // namespace

AmplitudeValue transmission_amplitude(const ModelParameters& params, const DefectRegimeData& rd,
                                      cplx lh, double tol) {
    if (params.is_rational()) {
        cplx h = 0.5 * kI * lh;
        double s = 0.5 * rd.S_tilde;
        AmplitudeValue v;
        v.value = gamma_ratio(h + s + 0.75, -h + s + 0.25, h + s + 0.25, -h + s + 0.75);
        v.err_estimate = 1e-14 * std::abs(v.value);
        return v;
    }
    require_attractive_branch(params, rd);
    double g = params.gamma(), b = 2.0 * g;
    if (params.regime() == Regime::Repulsive) {
        cplx z = kI * g * lh;
        double A = g * rd.S_tilde - rd.m + 0.5 * g;
        return product_value({gf(+1, z + A + g, b), gf(+1, z - A + g + 1.0, b), gf(-1, z + A, b),
                              gf(-1, z - A + 2.0 * g + 1.0, b), gf(+1, -z + A, b),
                              gf(+1, -z - A + 2.0 * g + 1.0, b), gf(-1, -z + A + g, b),
                              gf(-1, -z - A + g + 1.0, b)},
                             tol);
    }
    cplx z = kI * lh - rd.Lambda;
    double x = rd.xi - rd.m * (g + 1.0);
    return product_value({gf(+1, z - x + 2.0 * g + 0.5, b), gf(+1, z + x + 0.5, b),
                          gf(-1, z - x + g + 0.5, b), gf(-1, z + x + g + 0.5, b),
                          gf(+1, -z - x + g + 0.5, b), gf(+1, -z + x + g + 0.5, b),
                          gf(-1, -z - x + 2.0 * g + 0.5, b), gf(-1, -z + x + 0.5, b)},
                         tol);
}

AmplitudeValue transmission_integral(const ModelParameters& params, const DefectRegimeData& rd,
                                     double lh, const FourierOptions& opt) {
    if (rd.Lambda != 0.0)
        throw DomainError("transmission_integral: the Fourier form needs Lambda = 0");
    require_attractive_branch(params, rd);
    return fourier_log_integral(make_kernel(KernelName::RT, params, 2.0 * rd.S), lh, opt);
}

cplx transmission_second_ratio(const DefectRegimeData& rd, cplx lh) {
    cplx den = kI * lh + rd.S_tilde + 0.5;
    if (std::abs(den) < 1e-14) throw PoleError("T2/T: pole at " + fmt_cplx(lh));
    return (kI * lh - rd.S_tilde - 0.5) / den;
}

std::optional<double> transmission_rep_mu(const ModelParameters& params) {
    if (params.is_rational()) return std::nullopt;
    if (params.regime() == Regime::Attractive)
        throw NotRealizable(
            "attractive transmission matrix lives on an infinite-dimensional representation");
    return kPi * params.gamma();
}

SpinRepresentation transmission_rep(const ModelParameters& params, const DefectRegimeData& rd) {
    std::optional<double> mu = transmission_rep_mu(params);
    if (!is_half_integer(rd.S_tilde) || rd.S_tilde < 0.0)
        throw DomainError("transmission matrix needs a half-integer shifted spin, got " +
                          num(rd.S_tilde));
    if (rd.S_tilde == 0.0) {
        SpinRepresentation rep;
        rep.spin = 0.0;
        rep.dim = 1;
        rep.mu = mu;
        rep.Sz = rep.Sp = rep.Sm = Mat::Zero(1, 1);
        return rep;
    }
    return build_rep(rd.S_tilde, mu);
}

Mat m_block(const SpinRepresentation& rep, cplx lambda) {
    const int n = rep.dim;
    Mat M = Mat::Zero(2 * n, 2 * n);
    cplx c = rep.mu ? cplx(std::sin(*rep.mu)) : cplx(1.0);
    for (int k = 0; k < n; ++k) {
        double a = rep.Sz(k, k).real();
        cplx up = kI * lambda + a + 0.5, dn = kI * lambda - a + 0.5;
        if (rep.mu) {
            up = std::sin(*rep.mu * up);
            dn = std::sin(*rep.mu * dn);
        }
        M(k, k) = up;
        M(n + k, n + k) = dn;
    }
    M.topRightCorner(n, n) = c * rep.Sm;
    M.bottomLeftCorner(n, n) = c * rep.Sp;
    return M;
}

cplx m_block_denominator(const SpinRepresentation& rep, cplx lambda) {
    cplx x = kI * lambda + rep.spin + 0.5;
    return rep.mu ? std::sin(*rep.mu * x) : x;
}

Mat transmission_matrix(const ModelParameters& params, const DefectRegimeData& rd,
                        const SpinRepresentation& rep, cplx lh) {
    std::optional<double> mu = transmission_rep_mu(params);
    if (mu.has_value() != rep.mu.has_value() ||
        (mu && std::abs(*mu - *rep.mu) > 1e-14))
        throw RepMismatch("transmission_matrix: representation deformation must be " +
                          (mu ? "pi*gamma = " + num(*mu) : std::string("absent")));
    if (std::abs(rep.spin - rd.S_tilde) > 1e-12)
        throw RepMismatch("transmission_matrix: representation spin " + num(rep.spin) +
                          " differs from the shifted spin " + num(rd.S_tilde));
    cplx den = m_block_denominator(rep, lh);
    if (std::abs(den) < 1e-14) throw PoleError("transmission_matrix: pole at " + fmt_cplx(lh));
    return transmission_amplitude(params, rd, lh).value / den * m_block(rep, lh);
}

Mat transmission_matrix(const ModelParameters& params, const DefectRegimeData& rd, cplx lh) {
    return transmission_matrix(params, rd, transmission_rep(params, rd), lh);
}

AttractiveTemplate attractive_transmission_template(const ModelParameters& params,
                                                    const DefectRegimeData& rd, cplx lh) {
    require_attractive(params, "attractive transmission template");
    double g = params.gamma();
    AttractiveTemplate t;
    t.u = lh / g;
    t.scalar = transmission_amplitude(params, rd, lh);
    t.denominator = std::sin(kPi * g * (kI * t.u + rd.S_tilde + 0.5));
    if (std::abs(t.denominator) < 1e-14)
        throw PoleError("attractive template: denominator vanishes at " + fmt_cplx(lh));
    t.prefactor = t.scalar.value / t.denominator;
    t.offdiag_coefficient = std::sin(kPi * g);
    t.diagonal_entry = "sin(pi*gamma*(i*u +- Sz + 1/2))";
    double p = rd.S + 0.5;
    cplx x = kPi * g * (kI * t.u + 0.5);
    cplx rhs;
    if (std::abs(p - std::round(p)) < 1e-12) {
        t.branch = "sin";
        t.branch_sign = (long(std::lround(p)) % 2 == 0) ? 1 : -1;
        rhs = double(t.branch_sign) * std::sin(x);
    } else {
        t.branch = "cos";
        t.branch_sign = (long(std::lround(rd.S)) % 2 == 0) ? -1 : 1;
        rhs = double(t.branch_sign) * std::cos(x);
    }
    cplx lhs = std::sin(kPi * g * (kI * t.u + 0.5 - p / g));
    t.identity_residual = std::abs(lhs - rhs);
    return t;
}

CorriganVariables corrigan_variables(const DefectRegimeData& rd, cplx lh) {
    return {-kI * lh + rd.Lambda + rd.xi, -kI * lh + rd.Lambda - rd.xi};
}

CorriganResult corrigan_form(cplx z1, cplx z2, double g, double tol) {
    if (!(g > 0.0)) throw DomainError("corrigan_form needs gamma > 0");
    double b = 2.0 * g;
    AmplitudeValue prod = product_value(
        {gf(+1, z1 + g + 0.5, b), gf(+1, z2 + g + 0.5, b), gf(-1, z1 + 2.0 * g + 0.5, b),
         gf(-1, z2 + 2.0 * g + 0.5, b), gf(+1, -z1 + 2.0 * g + 0.5, b),
         gf(+1, -z2 + 2.0 * g + 0.5, b), gf(-1, -z1 + g + 0.5, b), gf(-1, -z2 + g + 0.5, b)},
        tol, Regularization::ArgumentScale);
    CorriganResult out;
    cplx pre = std::exp(log_gamma(0.5 - z1) + log_gamma(0.5 - z2));
    out.rho_d.value = pre * prod.value;
    out.rho_d.err_estimate = std::abs(pre) * prod.err_estimate;
    out.rho_d.terms_used = prod.terms_used;
    cplx f = std::cos(kPi * z1) / kPi;
    out.T.value = f * out.rho_d.value;
    out.T.err_estimate = std::abs(f) * out.rho_d.err_estimate;
    out.T.terms_used = prod.terms_used;
    return out;
}

// ---------------------------------------------------------------------------
// Breathers

namespace {

cplx checked_div(cplx num_, cplx den, const char* what, cplx at) {
    if (std::abs(den) < 1e-14) throw PoleError(std::string(what) + ": pole at " + fmt_cplx(at));
    return num_ / den;
}

cplx breather_S11(cplx lambda, double g) {
    cplx th = kPi * lambda / g;
    cplx a = kI * kPi / (2.0 * g);
    cplx q = kI * kPi / 2.0;
    cplx top = std::sinh(0.5 * th - a) * std::sinh(0.5 * th + a + q);
    cplx bot = std::sinh(0.5 * th + a) * std::sinh(0.5 * th - a - q);
    return -checked_div(top, bot, "breather S", lambda);
}

cplx breather_T1(cplx lh, double g, cplx e1, cplx e2) {
    cplx th = kPi * lh / g;
    cplx q = kI * kPi / 4.0;
    cplx top = std::sinh(0.5 * (th - e1) - q) * std::sinh(0.5 * (th - e2) - q);
    cplx bot = std::sinh(0.5 * (th - e1) + q) * std::sinh(0.5 * (th - e2) + q);
    return -checked_div(top, bot, "breather T", lh);
}

}  // namespace

cplx breather_S(int n1, int n2, cplx lambda, double g) {
    if (n1 < 1 || n2 < 1) throw DomainError("breather_S needs n1, n2 >= 1");
    if (!(g > 0.0)) throw DomainError("breather_S needs gamma > 0");
    cplx v = 1.0;
    for (int l1 = 1; l1 <= n1; ++l1)
        for (int l2 = 1; l2 <= n2; ++l2)
            v *= breather_S11(lambda + 0.5 * kI * double(n1 - n2 - 2 * l1 + 2 * l2), g);
    return v;
}

cplx breather_T(int n, cplx lh, double g, cplx e1, cplx e2) {
    if (n < 1) throw DomainError("breather_T needs n >= 1");
    if (!(g > 0.0)) throw DomainError("breather_T needs gamma > 0");
    cplx v = 1.0;
    for (int l = 1; l <= n; ++l) v *= breather_T1(lh + 0.5 * kI * double(n + 1 - 2 * l), g, e1, e2);
    return v;
}

AmplitudeValue breather_S_integral(const ModelParameters& params, double lambda,
                                   const FourierOptions& opt) {
    AmplitudeValue f = fourier_log_integral(make_kernel(KernelName::RB, params), -lambda, opt);
    f.value = -f.value;
    return f;
}

AmplitudeValue breather_T_integral(const ModelParameters& params, const DefectRegimeData& rd,
                                   double lh, const FourierOptions& opt) {
    if (rd.Lambda != 0.0)
        throw DomainError("breather_T_integral: the Fourier form needs Lambda = 0");
    AmplitudeValue f =
        fourier_log_integral(make_kernel(KernelName::TB, params, 2.0 * rd.S), -lh, opt);
    f.value = -f.value;
    return f;
}

double renormalized_hole_spin(const ModelParameters& params, const DefectRegimeData& rd) {
    require_trig(params, "renormalized_hole_spin");
    if (params.regime() != Regime::Repulsive)
        throw DomainError("renormalized_hole_spin is the repulsive-regime formula");
    double nu = params.nu();
    double factor = nu / (nu - 1.0);
    double sz = factor * (rd.S_tilde + 0.5);
    return sz / factor;
}

}  // namespace defectbethe
