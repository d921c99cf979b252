#include "defectbethe/spin_algebra.hpp"

#include <cmath>
#include <sstream>

namespace defectbethe {

ModelParameters ModelParameters::rational() { return ModelParameters{}; }

ModelParameters ModelParameters::trigonometric(double mu, Regime regime) {
    if (!(mu > 0.0 && mu < kPi))
        throw DomainError("trigonometric model needs mu in (0, pi), got " + std::to_string(mu));
    ModelParameters p;
    p.family_ = Family::Trigonometric;
    p.mu_ = mu;
    p.regime_ = regime;
    return p;
}

double ModelParameters::mu() const {
    if (is_rational()) throw DomainError("rational model has no anisotropy mu");
    return mu_;
}

double ModelParameters::nu() const { return kPi / mu(); }

Regime ModelParameters::regime() const {
    if (is_rational()) throw DomainError("rational model has no regime");
    return regime_;
}

double ModelParameters::gamma() const {
    double n = nu();
    return regime() == Regime::Repulsive ? 1.0 / (n - 1.0) : n - 1.0;
}

std::string ModelParameters::describe() const {
    if (is_rational()) return "xxx";
    std::ostringstream os;
    os << "xxz(mu=" << mu_ << ", " << (regime_ == Regime::Repulsive ? "repulsive" : "attractive")
       << ")";
    return os.str();
}

double q_number(double x, double mu) {
    double s = std::sin(mu);
    if (!(mu > 0.0 && mu < kPi) || s == 0.0)
        throw DomainError("q_number needs mu in (0, pi)");
    return std::sin(mu * x) / s;
}

bool is_half_integer(double S) {
    double twice = 2.0 * S;
    return std::abs(twice - std::round(twice)) < 1e-12;
}

SpinRepresentation build_rep(double S, std::optional<double> mu) {
    if (!(S >= 0.5) || !is_half_integer(S))
        throw DomainError("build_rep needs S >= 1/2 with 2S integer, got " + std::to_string(S));
    SpinRepresentation rep;
    rep.spin = S;
    rep.dim = int(std::lround(2.0 * S)) + 1;
    rep.mu = mu;
    const int n = rep.dim;
    rep.Sz = Mat::Zero(n, n);
    rep.Sp = Mat::Zero(n, n);
    for (int k = 1; k <= n; ++k) rep.Sz(k - 1, k - 1) = 0.5 * (n + 1 - 2 * k);
    for (int k = 1; k < n; ++k) {
        double c2;
        if (mu) {
            c2 = q_number(k, *mu) * q_number(n - k, *mu);
            if (std::abs(c2) <= 1e-12)
                throw RootOfUnityError("q = e^{i mu} too close to a root of unity: [" +
                                       std::to_string(k) + "]_q [" + std::to_string(n - k) +
                                       "]_q = " + std::to_string(c2));
        } else {
            c2 = double(k) * (n - k);
        }
        // c2 < 0 once (2S+1) mu > pi; the complex root keeps S+ S- = c2
        rep.Sp(k - 1, k) = std::sqrt(cplx(c2));
    }
    rep.Sm = rep.Sp.transpose();
    return rep;
}

SpinRepresentation build_rep(double S, const ModelParameters& params) {
    if (params.is_rational()) return build_rep(S, std::nullopt);
    return build_rep(S, params.mu());
}

namespace {

Mat q_power_sz(const SpinRepresentation& rep, double power) {
    // q^{power Sz} with q = e^{i mu}
    Mat m = Mat::Zero(rep.dim, rep.dim);
    for (int k = 0; k < rep.dim; ++k)
        m(k, k) = std::exp(kI * (*rep.mu) * power * rep.Sz(k, k).real());
    return m;
}

}  // namespace

CasimirResult casimir(const SpinRepresentation& rep) {
    CasimirResult out;
    const int n = rep.dim;
    Mat I = Mat::Identity(n, n);
    if (!rep.mu) {
        out.matrix = rep.Sz * rep.Sz + 0.5 * (rep.Sm * rep.Sp + rep.Sp * rep.Sm) + 0.25 * I;
    } else {
        cplx q = std::exp(kI * (*rep.mu));
        out.matrix = q * q_power_sz(rep, 2.0) + (1.0 / q) * q_power_sz(rep, -2.0) +
                     (q - 1.0 / q) * (q - 1.0 / q) * rep.Sm * rep.Sp;
    }
    out.scalar = out.matrix.trace() / double(n);
    double off = max_norm(out.matrix - out.scalar * I);
    if (off > 1e-12)
        throw NotScalarError("casimir is not scalar, residual " + std::to_string(off));
    return out;
}

double algebra_residual(const SpinRepresentation& rep) {
    Mat c1 = rep.Sz * rep.Sp - rep.Sp * rep.Sz - rep.Sp;
    Mat c2 = rep.Sz * rep.Sm - rep.Sm * rep.Sz + rep.Sm;
    Mat rhs;
    if (!rep.mu) {
        rhs = 2.0 * rep.Sz;
    } else {
        double mu = *rep.mu;
        rhs = Mat::Zero(rep.dim, rep.dim);
        for (int k = 0; k < rep.dim; ++k) rhs(k, k) = q_number(2.0 * rep.Sz(k, k).real(), mu);
    }
    Mat c3 = rep.Sp * rep.Sm - rep.Sm * rep.Sp - rhs;
    return std::max({max_norm(c1), max_norm(c2), max_norm(c3)});
}

Mat total_spin_operator(const SpinRepresentation& rep) {
    const int n = rep.dim;
    Mat out = Mat::Zero(2 * n, 2 * n);
    out.topLeftCorner(n, n) = 0.5 * Mat::Identity(n, n) + rep.Sz;
    out.bottomRightCorner(n, n) = -0.5 * Mat::Identity(n, n) + rep.Sz;
    return out;
}

}  // namespace defectbethe
