#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace defectbethe {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI{0.0, 1.0};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct RootOfUnityError : Error { using Error::Error; };
struct NotScalarError : Error { using Error::Error; };
struct DimensionCapExceeded : Error { using Error::Error; };
struct SingularJacobian : Error { using Error::Error; };
struct DegenerateSpectrum : Error { using Error::Error; };
struct RepMismatch : Error { using Error::Error; };
struct NotRealizable : Error { using Error::Error; };

// NoConvergence carries the best residual reached and the largest root modulus
struct NoConvergence : Error {
    double best_residual;
    double max_root_abs;
    NoConvergence(const std::string& what, double best, double maxabs)
        : Error(what), best_residual(best), max_root_abs(maxabs) {}
};

struct AmplitudeValue {
    cplx value{1.0, 0.0};
    double err_estimate = 0.0;
    int terms_used = 0;
};

// entrywise max-modulus
inline double max_norm(const Mat& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::string fmt_cplx(cplx z);

}  // namespace defectbethe
