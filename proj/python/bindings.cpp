#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "defectbethe/amplitudes.hpp"
#include "defectbethe/lax_operators.hpp"
#include "defectbethe/physics_checks.hpp"
#include "defectbethe/special_functions.hpp"
#include "defectbethe/spin_algebra.hpp"
#include "defectbethe/spin_chain.hpp"

namespace py = pybind11;
using namespace defectbethe;

namespace {

py::dict amp_dict(const AmplitudeValue& a) {
    py::dict d;
    d["value"] = a.value;
    d["err"] = a.err_estimate;
    d["terms"] = a.terms_used;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "XXX/XXZ chains with a spin-S defect";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<PoleError>(m, "PoleError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<RootOfUnityError>(m, "RootOfUnityError", base.ptr());
    py::register_exception<NotScalarError>(m, "NotScalarError", base.ptr());
    py::register_exception<DimensionCapExceeded>(m, "DimensionCapExceeded", base.ptr());
    py::register_exception<SingularJacobian>(m, "SingularJacobian", base.ptr());
    py::register_exception<DegenerateSpectrum>(m, "DegenerateSpectrum", base.ptr());
    py::register_exception<RepMismatch>(m, "RepMismatch", base.ptr());
    py::register_exception<NotRealizable>(m, "NotRealizable", base.ptr());
    py::register_exception<NoConvergence>(m, "NoConvergence", base.ptr());
    py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());

    py::enum_<Regime>(m, "Regime")
        .value("Repulsive", Regime::Repulsive)
        .value("Attractive", Regime::Attractive);

    py::class_<ModelParameters>(m, "ModelParameters")
        .def_static("rational", &ModelParameters::rational)
        .def_static("trigonometric", &ModelParameters::trigonometric, py::arg("mu"), py::arg("regime"))
        .def_property_readonly("is_rational", &ModelParameters::is_rational)
        .def_property_readonly("mu", &ModelParameters::mu)
        .def_property_readonly("nu", &ModelParameters::nu)
        .def_property_readonly("gamma", &ModelParameters::gamma)
        .def_property_readonly("regime", &ModelParameters::regime)
        .def("__repr__", &ModelParameters::describe);

    py::class_<SpinRepresentation>(m, "SpinRepresentation")
        .def_readonly("spin", &SpinRepresentation::spin)
        .def_readonly("dim", &SpinRepresentation::dim)
        .def_readonly("mu", &SpinRepresentation::mu)
        .def_readonly("Sz", &SpinRepresentation::Sz)
        .def_readonly("Sp", &SpinRepresentation::Sp)
        .def_readonly("Sm", &SpinRepresentation::Sm);

    m.def("build_rep", py::overload_cast<double, std::optional<double>>(&build_rep), py::arg("S"),
          py::arg("mu") = std::nullopt);
    m.def("q_number", &q_number, py::arg("x"), py::arg("mu"));
    m.def("casimir", [](const SpinRepresentation& r) { return casimir(r).scalar; });
    m.def("algebra_residual", &algebra_residual);

    m.def("log_gamma", &log_gamma);
    m.def("verify_use1", [](double mu) { return verify_gamma_integral_identity(GammaIdentity::Use1, mu).residual; });
    m.def("verify_use2", [](double mu, double beta) {
        return verify_gamma_integral_identity(GammaIdentity::Use2, mu, beta).residual;
    });

    m.def("r_matrix", &r_matrix, py::arg("params"), py::arg("lam"));
    m.def("defect_lax", &defect_lax, py::arg("params"), py::arg("rep"), py::arg("lam"));
    m.def("ybe_residual", &ybe_residual, py::arg("params"), py::arg("l1"), py::arg("l2"));
    m.def("rll_residual", &rll_residual, py::arg("params"), py::arg("rep"), py::arg("l1"), py::arg("l2"),
          py::arg("perturbation") = cplx(0.0));

    py::class_<ChainSpec>(m, "ChainSpec")
        .def(py::init([](int N, int defect_site, double S, double Theta, const ModelParameters& p) {
                 return ChainSpec{N, defect_site, S, Theta, p};
             }),
             py::arg("N"), py::arg("defect_site") = 1, py::arg("S") = 0.5, py::arg("Theta") = 0.0,
             py::arg("params") = ModelParameters::rational())
        .def_readwrite("N", &ChainSpec::N)
        .def_readwrite("defect_site", &ChainSpec::defect_site)
        .def_readwrite("S", &ChainSpec::S)
        .def_readwrite("Theta", &ChainSpec::Theta);

    m.def("max_hilbert_dim", &max_hilbert_dim);
    m.def("transfer", &transfer, py::arg("chain"), py::arg("lam"));
    m.def("hamiltonian", &hamiltonian, py::arg("chain"));
    m.def("total_sz", &total_sz, py::arg("chain"));

    py::class_<BetheState>(m, "BetheState")
        .def_readonly("M", &BetheState::M)
        .def_readonly("roots", &BetheState::roots)
        .def_readonly("residual", &BetheState::residual)
        .def_readonly("iterations", &BetheState::iterations);
    m.def("solve_bae",
          [](const ChainSpec& c, int M, std::vector<cplx> seeds, double tol) {
              BaeOptions o;
              o.tol = tol;
              return solve_bae(c, M, std::move(seeds), o);
          },
          py::arg("chain"), py::arg("M"), py::arg("seeds") = std::vector<cplx>{}, py::arg("tol") = 1e-12);
    m.def("aba_eigenvalue", &aba_eigenvalue, py::arg("chain"), py::arg("roots"), py::arg("lam"));

    py::class_<DefectRegimeData>(m, "DefectRegimeData")
        .def_readonly("S", &DefectRegimeData::S)
        .def_readonly("Theta", &DefectRegimeData::Theta)
        .def_readonly("Lambda", &DefectRegimeData::Lambda)
        .def_readonly("m", &DefectRegimeData::m)
        .def_readonly("S_tilde", &DefectRegimeData::S_tilde)
        .def_readonly("xi", &DefectRegimeData::xi)
        .def_readonly("eta1", &DefectRegimeData::eta1)
        .def_readonly("eta2", &DefectRegimeData::eta2);
    m.def("make_regime_data", &make_regime_data, py::arg("params"), py::arg("S"), py::arg("Theta") = 0.0,
          py::arg("Lambda") = 0.0);

    m.def("kink_amplitude", [](const ModelParameters& p, cplx l) { return amp_dict(kink_S_amplitude(p, l)); },
          py::arg("params"), py::arg("lam"));
    m.def("kink_integral", [](const ModelParameters& p, double l) { return amp_dict(kink_S_integral(p, l)); },
          py::arg("params"), py::arg("lam"));
    m.def("transmission_amplitude",
          [](const ModelParameters& p, const DefectRegimeData& rd, cplx l) {
              return amp_dict(transmission_amplitude(p, rd, l));
          },
          py::arg("params"), py::arg("rd"), py::arg("lam_hat"));
    m.def("transmission_integral",
          [](const ModelParameters& p, const DefectRegimeData& rd, double l) {
              return amp_dict(transmission_integral(p, rd, l));
          },
          py::arg("params"), py::arg("rd"), py::arg("lam_hat"));
    m.def("transmission_matrix",
          py::overload_cast<const ModelParameters&, const DefectRegimeData&, cplx>(&transmission_matrix),
          py::arg("params"), py::arg("rd"), py::arg("lam_hat"));
    m.def("s_matrix", &s_matrix, py::arg("params"), py::arg("lam"));
    m.def("breather_S", &breather_S, py::arg("n1"), py::arg("n2"), py::arg("lam"), py::arg("gamma"));
    m.def("breather_T", &breather_T, py::arg("n"), py::arg("lam_hat"), py::arg("gamma"), py::arg("eta1"),
          py::arg("eta2"));

    m.def("defect_spectrum_residual",
          [](const ModelParameters& p, const SpinRepresentation& r, cplx l) {
              return defect_spectrum_closed_form(p, r, l).residual;
          },
          py::arg("params"), py::arg("rep"), py::arg("lam"));
    m.def("rtt_residual", &rtt_residual, py::arg("params"), py::arg("rd"), py::arg("l1"), py::arg("l2"));
    m.def("scalar_unitarity_residual", &scalar_unitarity_residual, py::arg("params"), py::arg("rd"),
          py::arg("lam"));
    m.def("scalar_crossing_residual", &scalar_crossing_residual, py::arg("params"), py::arg("rd"),
          py::arg("lam"));
}
