#pragma once

#include <optional>
#include <string>
#include <vector>

#include "defectbethe/common.hpp"

namespace defectbethe {

enum class Family { Rational, Trigonometric };
enum class Regime { Repulsive, Attractive };

class ModelParameters {
public:
    static ModelParameters rational();
    // mu in (0, pi), nu = pi/mu > 1
    static ModelParameters trigonometric(double mu, Regime regime);

    Family family() const { return family_; }
    bool is_rational() const { return family_ == Family::Rational; }
    // the accessors below throw DomainError for the rational family
    double mu() const;
    double nu() const;
    Regime regime() const;
    // repulsive: 1/(nu - 1); attractive: nu - 1
    double gamma() const;

    std::string describe() const;

private:
    Family family_ = Family::Rational;
    double mu_ = 0.0;
    Regime regime_ = Regime::Repulsive;
};

// [x]_q = sin(mu x)/sin(mu)
double q_number(double x, double mu);

struct SpinRepresentation {
    double spin = 0.5;
    int dim = 2;
    std::optional<double> mu;  // deformation q = e^{i mu}; empty for sl2
    Mat Sz, Sp, Sm;
};

// spin S >= 1/2 with 2S integer; mu empty for sl2
SpinRepresentation build_rep(double S, std::optional<double> mu = std::nullopt);
// deformation taken from the model (mu for trigonometric, none for rational)
SpinRepresentation build_rep(double S, const ModelParameters& params);

struct CasimirResult {
    Mat matrix;
    cplx scalar;
};

// C = Sz^2 + {S-, S+}/2 + 1/4 = (2S+1)^2/4, or
// C_q = q q^{2Sz} + q^{-1} q^{-2Sz} + (q - 1/q)^2 S- S+ = 2 cos(mu (2S+1));
// throws NotScalarError if the matrix is not scalar to 1e-12
CasimirResult casimir(const SpinRepresentation& rep);

// max residual of the (deformed) algebra relations
double algebra_residual(const SpinRepresentation& rep);

// sigma^z/2 (x) I + I (x) Sz on C^2 (x) C^n
Mat total_spin_operator(const SpinRepresentation& rep);

bool is_half_integer(double S);

}  // namespace defectbethe
