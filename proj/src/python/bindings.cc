#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quasibell/formulas.h"
#include "quasibell/linalg.h"
#include "quasibell/noise.h"
#include "quasibell/protocol.h"
#include "quasibell/states.h"
#include "quasibell/sweep.h"
#include "quasibell/verify.h"

namespace py = pybind11;
using namespace quasibell;

namespace {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

QuasiBellSpec spec_of(Family family, double r, double theta) {
    QuasiBellSpec spec{family, {r, theta}};
    spec.overlap.validate();
    return spec;
}

NoiseScenario scenario_of(NoiseKind kind, double eta, Exposure exposure) {
    NoiseScenario s{kind, eta, exposure};
    s.validate();
    return s;
}

Mat to_mat(const MatrixXc &m) {
    if (m.rows() > static_cast<Eigen::Index>(kMaxDim) || m.cols() > static_cast<Eigen::Index>(kMaxDim)) {
        throw std::invalid_argument("matrices larger than 8 x 8 are not supported");
    }
    return Mat(m);
}

Vec to_vec(const VectorXc &v) {
    if (v.size() > static_cast<Eigen::Index>(kMaxDim)) {
        throw std::invalid_argument("state vectors longer than 8 are not supported");
    }
    return Vec(v);
}

py::object opt(const std::optional<double> &v) {
    return v ? py::cast(*v) : py::none();
}

py::dict row_dict(const SweepRow &row) {
    py::dict d;
    d["family"] = std::string(family_name(row.family));
    d["r"] = row.r;
    d["theta"] = row.theta;
    d["noise"] = std::string(noise_kind_name(row.kind));
    d["eta"] = row.eta;
    d["exposure"] = std::string(exposure_name(row.exposure));
    d["f_ave_analytic"] = opt(row.f_ave_analytic);
    d["f_ave_sim"] = opt(row.f_ave_sim);
    d["gap"] = opt(row.gap);
    d["concurrence"] = opt(row.concurrence);
    d["masfi"] = opt(row.masfi);
    d["mfi"] = opt(row.mfi);
    d["singlet_fraction"] = opt(row.singlet_fraction);
    d["f_opt"] = opt(row.f_opt);
    d["degenerate"] = row.degenerate();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Teleportation over quasi Bell channels";

    py::enum_<Family>(m, "Family")
        .value("PSI_PLUS", Family::PsiPlus)
        .value("PSI_MINUS", Family::PsiMinus)
        .value("PHI_PLUS", Family::PhiPlus)
        .value("PHI_MINUS", Family::PhiMinus);
    py::enum_<NoiseKind>(m, "NoiseKind")
        .value("NONE", NoiseKind::None)
        .value("AMPLITUDE_DAMPING", NoiseKind::AmplitudeDamping)
        .value("PHASE_DAMPING", NoiseKind::PhaseDamping);
    py::enum_<Exposure>(m, "Exposure")
        .value("BOB_ONLY", Exposure::BobOnly)
        .value("ALICE_AND_BOB", Exposure::AliceAndBob)
        .value("ALL_THREE", Exposure::AllThree);

    py::register_exception<DegenerateStateError>(m, "DegenerateStateError", PyExc_ValueError);

    m.def("parse_family", [](const std::string &name) { return parse_family(name); });
    m.def("family_name", [](Family f) { return std::string(family_name(f)); });

    m.def(
        "quasi_bell_state",
        [](Family family, double r, double theta) {
            return VectorXc(build_quasi_bell(spec_of(family, r, theta)).amplitudes());
        },
        py::arg("family"), py::arg("r"), py::arg("theta") = 0.0,
        "Amplitudes of the quasi Bell state in the logical basis |00>, |01>, |10>, |11>.");
    m.def(
        "general_state",
        [](std::complex<double> mu, std::complex<double> nu, std::complex<double> p1, std::complex<double> p2) {
            return VectorXc(build_general({mu, nu, p1, p2}).amplitudes());
        },
        py::arg("mu"), py::arg("nu"), py::arg("p1"), py::arg("p2"));
    m.def(
        "concurrence", [](const VectorXc &amps) { return concurrence(StateVector::from_amplitudes(to_vec(amps))); },
        py::arg("amplitudes"));

    m.def(
        "tensor",
        [](const MatrixXc &a, const MatrixXc &b) {
            return MatrixXc(kron(to_mat(a), to_mat(b)));
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "partial_trace",
        [](const MatrixXc &rho, const std::vector<size_t> &keep, const std::vector<size_t> &dims) {
            return MatrixXc(partial_trace(to_mat(rho), keep, dims));
        },
        py::arg("rho"), py::arg("keep"), py::arg("dims"));
    m.def(
        "apply_noise",
        [](const MatrixXc &rho, NoiseKind kind, double eta, Exposure exposure) {
            return MatrixXc(
                apply_noise(DensityOperator::from_matrix(to_mat(rho)), scenario_of(kind, eta, exposure)).matrix());
        },
        py::arg("rho"), py::arg("kind"), py::arg("eta"), py::arg("exposure"));

    m.def(
        "teleportation_fidelity",
        [](Family family, double r, double theta, double polar, double azimuth, NoiseKind kind, double eta,
           Exposure exposure) {
            return noisy_fidelity_tel(spec_of(family, r, theta), scenario_of(kind, eta, exposure), {polar, azimuth});
        },
        py::arg("family"), py::arg("r"), py::arg("theta"), py::arg("polar"), py::arg("azimuth"),
        py::arg("noise") = NoiseKind::None, py::arg("eta") = 0.0, py::arg("exposure") = Exposure::BobOnly);
    m.def(
        "average_fidelity",
        [](Family family, double r, double theta, NoiseKind kind, double eta, Exposure exposure) {
            return noisy_average_fidelity(spec_of(family, r, theta), scenario_of(kind, eta, exposure));
        },
        py::arg("family"), py::arg("r"), py::arg("theta") = 0.0, py::arg("noise") = NoiseKind::None,
        py::arg("eta") = 0.0, py::arg("exposure") = Exposure::BobOnly, "Simulated Bloch-sphere average.");
    m.def(
        "analytic_average_fidelity",
        [](Family family, double r, double theta, NoiseKind kind, double eta, Exposure exposure) {
            return formulas::analytic_average_fidelity(spec_of(family, r, theta), scenario_of(kind, eta, exposure));
        },
        py::arg("family"), py::arg("r"), py::arg("theta") = 0.0, py::arg("noise") = NoiseKind::None,
        py::arg("eta") = 0.0, py::arg("exposure") = Exposure::BobOnly);
    m.def(
        "min_fidelity",
        [](Family family, double r, double theta) {
            QuasiBellSpec spec = spec_of(family, r, theta);
            MinimumFidelity mf = min_fidelity(projector(build_quasi_bell(spec)), family);
            return py::make_tuple(mf.value, mf.argmin.polar, mf.argmin.azimuth);
        },
        py::arg("family"), py::arg("r"), py::arg("theta") = 0.0,
        "Numerical minimum over input states: (value, polar, azimuth).");

    m.def(
        "report",
        [](Family family, double r, double theta, NoiseKind kind, double eta, Exposure exposure) {
            FidelityReport rep = make_report(spec_of(family, r, theta), scenario_of(kind, eta, exposure));
            py::dict d;
            d["concurrence"] = rep.concurrence;
            d["masfi"] = rep.masfi;
            d["mfi"] = rep.mfi;
            d["singlet_fraction"] = rep.singlet_fraction;
            d["f_opt"] = rep.f_opt;
            d["f_ave"] = rep.f_ave;
            return d;
        },
        py::arg("family"), py::arg("r"), py::arg("theta") = 0.0, py::arg("noise") = NoiseKind::None,
        py::arg("eta") = 0.0, py::arg("exposure") = Exposure::BobOnly);

    m.def(
        "sweep",
        [](const std::vector<Family> &families, std::tuple<double, double, int> r,
           std::tuple<double, double, int> theta, std::tuple<double, double, int> eta, NoiseKind kind,
           Exposure exposure) {
            SweepConfig cfg;
            cfg.families = families;
            cfg.r = {std::get<0>(r), std::get<1>(r), std::get<2>(r)};
            cfg.theta = {std::get<0>(theta), std::get<1>(theta), std::get<2>(theta)};
            cfg.eta = {std::get<0>(eta), std::get<1>(eta), std::get<2>(eta)};
            cfg.kind = kind;
            cfg.exposure = exposure;
            cfg.validate();
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_sweep(cfg);
            }
            py::list out;
            for (const SweepRow &row : rows) {
                out.append(row_dict(row));
            }
            return out;
        },
        py::arg("families"), py::arg("r"), py::arg("theta") = std::make_tuple(0.0, 0.0, 1),
        py::arg("eta") = std::make_tuple(0.0, 0.0, 1), py::arg("noise") = NoiseKind::None,
        py::arg("exposure") = Exposure::BobOnly, "Grid sweep; each range is (min, max, steps).");

    m.def("verify", [] {
        std::vector<CheckResult> results;
        {
            py::gil_scoped_release release;
            results = run_verification();
        }
        py::list out;
        for (const CheckResult &r : results) {
            py::dict d;
            d["name"] = r.name;
            d["passed"] = r.passed;
            d["worst"] = r.worst;
            d["tolerance"] = r.tolerance;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    });

    m.attr("CLASSICAL_FIDELITY") = kClassicalFidelity;
}
