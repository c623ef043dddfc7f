#include "radiant/cli.hpp"
#include "radiant/coupling.hpp"
#include "radiant/emission.hpp"
#include "radiant/ensemble.hpp"
#include "radiant/geometry.hpp"
#include "radiant/modes.hpp"
#include "radiant/parallel.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace radiant;

namespace {

LatticeSpec make_spec(int dimensionality, std::array<int, 3> counts,
                      double kl_spacing) {
    LatticeSpec s;
    s.dimensionality = dimensionality;
    s.counts = counts;
    s.spacing = kl_spacing;
    s.validate();
    return s;
}

} // namespace

PYBIND11_MODULE(_radiant, m) {
    m.doc() = "Collective spontaneous emission from entangled atomic arrays";

    py::class_<AtomArray>(m, "AtomArray")
        .def_readonly("positions", &AtomArray::positions)
        .def("size", &AtomArray::size)
        .def("min_pair_distance", &AtomArray::min_pair_distance);

    py::class_<LatticeSpec>(m, "LatticeSpec")
        .def(py::init(&make_spec), py::arg("dimensionality"),
             py::arg("counts"), py::arg("kl_spacing"))
        .def_readonly("spacing", &LatticeSpec::spacing)
        .def("atom_count", &LatticeSpec::atom_count);

    py::class_<CouplingMatrix>(m, "CouplingMatrix")
        .def_readonly("entries", &CouplingMatrix::entries)
        .def("size", &CouplingMatrix::size);

    py::class_<ModeDecomposition>(m, "ModeDecomposition")
        .def_readonly("modes", &ModeDecomposition::modes)
        .def_readonly("eigenvalues", &ModeDecomposition::eigenvalues)
        .def_readonly("eigenvector_condition",
                      &ModeDecomposition::eigenvector_condition)
        .def("size", &ModeDecomposition::size)
        .def("rate", &ModeDecomposition::rate)
        .def("shift", &ModeDecomposition::shift);

    py::class_<PredictedRates>(m, "PredictedRates")
        .def_readonly("rate", &PredictedRates::rate)
        .def_readonly("enhancement", &PredictedRates::enhancement)
        .def_readonly("superradiant", &PredictedRates::superradiant)
        .def_readonly("beam_width", &PredictedRates::beam_width)
        .def_readonly("forward_probability",
                      &PredictedRates::forward_probability)
        .def_readonly("escape_probability",
                      &PredictedRates::escape_probability)
        .def_readonly("peak_exists", &PredictedRates::peak_exists)
        .def_readonly("m_c", &PredictedRates::m_c)
        .def_readonly("peak_direction", &PredictedRates::peak_direction);

    py::class_<BraggPeak>(m, "BraggPeak")
        .def_readonly("m", &BraggPeak::m)
        .def_readonly("exists", &BraggPeak::exists)
        .def_readonly("direction", &BraggPeak::direction)
        .def_readonly("cone_cos", &BraggPeak::cone_cos)
        .def_readonly("probability", &BraggPeak::probability);

    py::class_<MixedPhotonState>(m, "MixedPhotonState")
        .def_readonly("epsilon", &MixedPhotonState::epsilon)
        .def_readonly("chi", &MixedPhotonState::chi)
        .def_readonly("j0", &MixedPhotonState::j0);

    py::class_<PurityReport>(m, "PurityReport")
        .def_readonly("formula", &PurityReport::formula)
        .def_readonly("numeric", &PurityReport::numeric)
        .def_readonly("incoherent_trace", &PurityReport::incoherent_trace)
        .def_readonly("cross_term", &PurityReport::cross_term);

    py::class_<SumRuleReport>(m, "SumRuleReport")
        .def_readonly("rate_sum", &SumRuleReport::rate_sum)
        .def_readonly("shift_sum", &SumRuleReport::shift_sum)
        .def_readonly("rate_residual", &SumRuleReport::rate_residual)
        .def_readonly("shift_residual", &SumRuleReport::shift_residual);

    m.def("set_thread_count", &set_thread_count, py::arg("n"));
    m.def("build_lattice", &build_lattice);
    m.def("solve_ion_chain_equilibrium", &solve_ion_chain_equilibrium,
          py::arg("n"), py::arg("avg_spacing") = 1.0);
    m.def(
        "sample_ensemble_positions",
        [](int n, double kl_cloud_size, std::uint64_t seed) {
            EnsembleSpec s;
            s.atom_count = n;
            s.cloud_size = kl_cloud_size;
            s.seed = seed;
            return sample_ensemble_positions(s);
        },
        py::arg("n"), py::arg("kl_cloud_size"), py::arg("seed") = 0);
    m.def("coupling_fixed", &coupling_fixed, py::arg("atoms"),
          py::arg("laser_dir") = Vec3(Vec3::UnitZ()));
    m.def("coupling_ensemble", &coupling_ensemble, py::arg("n"),
          py::arg("kl_cloud_size"));
    m.def("diagonalize", &diagonalize);
    m.def("sum_rule_report", &sum_rule_report);
    m.def("predict_1d", &predict_1d, py::arg("spec"), py::arg("n"));
    m.def("predict_3d", &predict_3d, py::arg("spec"), py::arg("laser_dir"),
          py::arg("n"));
    m.def("bragg_decompose", &bragg_decompose, py::arg("spec"),
          py::arg("laser_dir"), py::arg("n"));
    m.def("optical_thickness", &optical_thickness, py::arg("n"),
          py::arg("kl_cloud_size"));
    m.def("mixed_photon_state", &mixed_photon_state, py::arg("n"),
          py::arg("kl_cloud_size"), py::arg("radial_points") = 2001);
    m.def("purity", &purity, py::arg("state"), py::arg("n_theta") = 0,
          py::arg("n_phi") = 0);
    m.def(
        "multiphoton_weights",
        [](int photons, double chi, int atom_count) {
            const MultiphotonReport r =
                multiphoton_report(photons, chi, atom_count);
            return py::make_tuple(r.pure_weight, r.purity_bound);
        },
        py::arg("photons"), py::arg("chi"), py::arg("atom_count"));
    m.def(
        "run_config",
        [](const std::string &config_text, const std::string &out_dir) {
            std::istringstream in(config_text);
            const cli::RunConfig c = cli::parse_config(in);
            return cli::run(c, out_dir).artifacts;
        },
        py::arg("config_text"), py::arg("out_dir"));
}
