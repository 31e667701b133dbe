// pybind11 bindings for the main floqent operations

#include "floqent/kummer.hpp"
#include "floqent/resonance.hpp"
#include "floqent/single_qubit.hpp"
#include "floqent/sweep.hpp"

#include <nlohmann/json.hpp>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace floqent;

namespace {

PeriodicDrive drive_from_args(const std::string& kind, double F, double F_prime, double omega, int harmonics) {
    switch (PeriodicDrive::kind_from_string(kind)) {
        case PeriodicDrive::Kind::monochromatic: return PeriodicDrive::monochromatic(F, omega);
        case PeriodicDrive::Kind::bichromatic: return PeriodicDrive::bichromatic(F, F_prime, omega);
        case PeriodicDrive::Kind::sawtooth: return PeriodicDrive::sawtooth(F, omega, harmonics);
        case PeriodicDrive::Kind::delta_kick: return PeriodicDrive::delta_kick(F, omega);
        default: throw std::invalid_argument("unsupported drive kind: " + kind);
    }
}

struct PySpectrum {
    FloquetSpectrum spectrum;
};

}  // namespace

PYBIND11_MODULE(_floqent, m) {
    m.doc() = "Floquet quasi-energy spectra and entanglement resonances of driven qubits";

    m.def("fold_to_zone", &fold_to_zone, py::arg("energy"), py::arg("omega"),
          "Fold an energy into the centered Floquet zone [-omega/2, omega/2).");
    m.def("truncation_rule", &truncation_rule, py::arg("f_total"), py::arg("omega"), py::arg("margin") = 4,
          "Fourier truncation rule M = ceil(2 F_total / omega) + margin.");
    m.def("kummer_1f1", &kummer_1f1, py::arg("a"), py::arg("b"), py::arg("z"),
          "Kummer's confluent hypergeometric function 1F1(a, b, z).");
    m.def(
        "landau_zener_entries",
        [](double coupling, double slope, double t) {
            const auto e = landau_zener_entries(coupling, slope, t);
            return py::make_tuple(e.a, e.b);
        },
        py::arg("coupling"), py::arg("slope"), py::arg("t"),
        "Entries (a, b) of the exact linear-sweep propagator U = [[a, -b], [b*, a*]].");

    m.def("concurrence", &concurrence, py::arg("psi"));
    m.def("three_tangle", &three_tangle, py::arg("psi"));
    m.def("dicke_state", &dicke_state, py::arg("n_qubits"), py::arg("m"));

    py::class_<SingleQubitParams>(m, "SingleQubitParams")
        .def(py::init([](double omega0, double omega, double F, double F_prime) {
                 return SingleQubitParams{omega0, omega, F, F_prime};
             }),
             py::arg("omega0"), py::arg("omega") = 1.0, py::arg("F") = 0.0, py::arg("F_prime") = 0.0)
        .def_readwrite("omega0", &SingleQubitParams::omega0)
        .def_readwrite("omega", &SingleQubitParams::omega)
        .def_readwrite("F", &SingleQubitParams::F)
        .def_readwrite("F_prime", &SingleQubitParams::F_prime);

    m.def(
        "mu_numeric",
        [](const SingleQubitParams& p, const std::string& kind) {
            return mu_numeric(p, PeriodicDrive::kind_from_string(kind));
        },
        py::arg("params"), py::arg("kind") = "monochromatic");
    m.def("mu_rwa", &mu_rwa, py::arg("params"));
    m.def("mu_bessel", &mu_bessel, py::arg("params"));
    m.def("mu_sawtooth", &mu_sawtooth, py::arg("params"));
    m.def("mu_delta_kick", &mu_delta_kick, py::arg("params"));
    m.def(
        "degeneracy_deviation",
        [](double mu, double omega, int denom) {
            const auto d = degeneracy_deviation(mu, omega, denom);
            return py::make_tuple(d.n, d.deviation);
        },
        py::arg("mu"), py::arg("omega"), py::arg("denom") = 4,
        "Nearest photon index and deviation min_n |denom mu / omega - n|.");
    m.def("parity_selection", &parity_selection, py::arg("parity_i"), py::arg("parity_j"), py::arg("n"));
    m.def("corridor_mask", &corridor_mask, py::arg("mu_grid"), py::arg("omega"), py::arg("denom"),
          py::arg("tolerance"));

    py::class_<PySpectrum>(m, "FloquetSpectrum")
        .def_property_readonly("quasi_energies",
                               [](const PySpectrum& s) { return s.spectrum.quasi_energies(); })
        .def_property_readonly("omega", [](const PySpectrum& s) { return s.spectrum.omega; })
        .def_property_readonly("dim", [](const PySpectrum& s) { return s.spectrum.dim; })
        .def_property_readonly("backend",
                               [](const PySpectrum& s) {
                                   return s.spectrum.backend == Backend::fourier ? "fourier" : "monodromy";
                               })
        .def(
            "state_at",
            [](const PySpectrum& s, int i, double t) -> Vector { return floquet_state_at(s.spectrum, i, t); },
            py::arg("i"), py::arg("t") = 0.0)
        .def(
            "entanglement",
            [](const PySpectrum& s, int i, int n_samples) {
                const auto kind = s.spectrum.dim == 4 ? MeasureKind::concurrence : MeasureKind::three_tangle;
                return time_averaged_entanglement(s.spectrum, i, kind, n_samples).mean;
            },
            py::arg("i"), py::arg("n_samples") = 128,
            "Period-averaged concurrence (4-dim) or three-tangle (8-dim) of state i.");

    m.def(
        "solve",
        [](int n_qubits, double omega0, double F, const std::string& drive_kind, double omega, double C,
           const std::string& coupling_kind, double F_prime, const std::string& subspace, int margin,
           const std::string& backend) {
            QubitSystem sys = make_uniform_system(n_qubits, omega0,
                                                  drive_from_args(drive_kind, F, F_prime, omega, 64),
                                                  coupling_kind_from_string(coupling_kind), C);
            SubspaceBasis basis = subspace == "symmetric" && n_qubits >= 2 ? symmetric_dicke_basis(n_qubits)
                                                                           : full_basis(n_qubits);
            SolveOptions opts;
            opts.margin = margin;
            PySpectrum out;
            if (backend == "monodromy")
                out.spectrum = solve_monodromy(sys, basis, opts);
            else if (backend == "fourier")
                out.spectrum = solve_fourier(sys, basis, opts);
            else
                out.spectrum = solve_system(sys, basis, opts);
            if (basis.kind != SubspaceBasis::Kind::full) out.spectrum = expand_to_full(out.spectrum, basis);
            return out;
        },
        py::arg("n_qubits"), py::arg("omega0"), py::arg("F"), py::arg("drive_kind") = "monochromatic",
        py::arg("omega") = 1.0, py::arg("C") = 0.0, py::arg("coupling_kind") = "exchange",
        py::arg("F_prime") = 0.0, py::arg("subspace") = "auto", py::arg("margin") = 4,
        py::arg("backend") = "auto",
        "Solve the driven N-qubit Floquet problem; states are returned in the full register.");

    m.def(
        "run_sweep",
        [](const std::string& config_json, bool resume) {
            return run_to_disk(SweepConfig::from_json(nlohmann::json::parse(config_json)), resume);
        },
        py::arg("config_json"), py::arg("resume") = false,
        "Run a sweep task from a JSON config string; writes results under the configured directory.");

    m.attr("__version__") = "0.1.0";
}
