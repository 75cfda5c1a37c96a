#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "absorbing/analysis.hpp"
#include "absorbing/flowbuild.hpp"
#include "absorbing/generator.hpp"
#include "absorbing/serialize.hpp"
#include "absorbing/state.hpp"
#include "absorbing/weyl.hpp"

namespace py = pybind11;
using namespace absorbing;

namespace {

using NpMatrix = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const NpMatrix& arr) {
    if (arr.ndim() != 2) throw DimensionMismatch("expected a 2-d complex array");
    ComplexMatrix m(static_cast<int>(arr.shape(0)), static_cast<int>(arr.shape(1)));
    auto view = arr.unchecked<2>();
    for (py::ssize_t i = 0; i < arr.shape(0); ++i)
        for (py::ssize_t j = 0; j < arr.shape(1); ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = view(i, j);
    return m;
}

py::array_t<cplx> to_numpy(const ComplexMatrix& m) {
    py::array_t<cplx> arr({m.rows(), m.cols()});
    auto view = arr.mutable_unchecked<2>();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) view(i, j) = m(i, j);
    return arr;
}

std::vector<ComplexMatrix> to_matrices(const std::vector<NpMatrix>& arrs) {
    std::vector<ComplexMatrix> out;
    out.reserve(arrs.size());
    for (const auto& a : arrs) out.push_back(to_matrix(a));
    return out;
}

std::vector<py::array_t<cplx>> to_numpys(const std::vector<ComplexMatrix>& ms) {
    std::vector<py::array_t<cplx>> out;
    out.reserve(ms.size());
    for (const auto& m : ms) out.push_back(to_numpy(m));
    return out;
}

Superoperator cp_superoperator(const std::vector<ComplexMatrix>& kraus, int r) {
    Superoperator q{r, ComplexMatrix(r * r, r * r)};
    for (const auto& v : kraus) q.mat += kron(v, v.conjugate());
    return q;
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "completely positive semigroups preserving a faithful state";

    // Translators run most-recently-registered first, so the derived class
    // must be registered after its base to surface under its own name.
    py::register_exception<Error>(mod, "CoreError", PyExc_ValueError);
    py::register_exception<SchemaViolation>(mod, "SchemaViolation", PyExc_ValueError);

    py::class_<FaithfulState>(mod, "FaithfulState")
        .def_readonly("r", &FaithfulState::r)
        .def_readonly("eigenvalue_list", &FaithfulState::eigenvalue_list)
        .def_property_readonly("basis",
                               [](const FaithfulState& s) { return to_numpy(s.basis); })
        .def_property_readonly("density",
                               [](const FaithfulState& s) { return to_numpy(s.density); })
        .def("tracial", &FaithfulState::tracial)
        .def("expect", [](const FaithfulState& s, const NpMatrix& x) {
            return s.expect(to_matrix(x));
        });

    py::class_<LindbladGenerator>(mod, "LindbladGenerator")
        .def_readonly("r", &LindbladGenerator::r)
        .def_property_readonly("kraus",
                               [](const LindbladGenerator& g) { return to_numpys(g.kraus); })
        .def_property_readonly("drift",
                               [](const LindbladGenerator& g) { return to_numpy(g.drift); })
        .def("apply", [](const LindbladGenerator& g, const NpMatrix& x) {
            return to_numpy(g.apply(to_matrix(x)));
        });

    py::class_<PurityCertificate>(mod, "PurityCertificate")
        .def_readonly("ergodic", &PurityCertificate::ergodic)
        .def_readonly("irreducible", &PurityCertificate::irreducible)
        .def_readonly("fixed_point_dim", &PurityCertificate::fixed_point_dim)
        .def_readonly("commutant_dim", &PurityCertificate::commutant_dim)
        .def_readonly("spectral_gap_estimate", &PurityCertificate::spectral_gap_estimate)
        .def_readonly("gap_constant", &PurityCertificate::gap_constant)
        .def_readonly("method_notes", &PurityCertificate::method_notes)
        .def("pure", &PurityCertificate::pure);

    py::class_<ConvergenceReport>(mod, "ConvergenceReport")
        .def_readonly("times", &ConvergenceReport::times)
        .def_readonly("distances", &ConvergenceReport::distances)
        .def_readonly("gap_bound", &ConvergenceReport::gap_bound)
        .def_readonly("epsilon", &ConvergenceReport::epsilon)
        .def_readonly("rate", &ConvergenceReport::rate)
        .def_readonly("fitted_constant", &ConvergenceReport::fitted_constant)
        .def_readonly("initial_distance", &ConvergenceReport::initial_distance);

    py::class_<PerturbationDemo>(mod, "PerturbationDemo")
        .def_readonly("before", &PerturbationDemo::before)
        .def_readonly("after", &PerturbationDemo::after)
        .def_property_readonly("ell",
                               [](const PerturbationDemo& d) { return to_numpy(d.ell); })
        .def_readonly("defect_before", &PerturbationDemo::defect_before)
        .def_readonly("defect_after", &PerturbationDemo::defect_after);

    py::class_<PureFlowModel>(mod, "PureFlowModel")
        .def_readonly("gen", &PureFlowModel::gen)
        .def_readonly("state", &PureFlowModel::state)
        .def_readonly("certificate", &PureFlowModel::certificate)
        .def_readonly("index", &PureFlowModel::index)
        .def_readonly("branch", &PureFlowModel::branch)
        .def_readonly("kraus_selection", &PureFlowModel::kraus_selection);

    mod.def("make_state", [](const std::vector<double>& lams, py::object basis) {
        if (basis.is_none()) {
            const int r = static_cast<int>(lams.size());
            return make_state(lams, ComplexMatrix::identity(r));
        }
        return make_state(lams, to_matrix(basis.cast<NpMatrix>()));
    }, py::arg("eigenvalue_list"), py::arg("basis") = py::none());

    mod.def("state_from_density", [](const NpMatrix& d) {
        return state_from_density(to_matrix(d));
    }, py::arg("density"));

    mod.def("admissible_basis", [](const NpMatrix& t, std::uint64_t seed) {
        return to_numpy(admissible_basis(to_matrix(t), seed));
    }, py::arg("t"), py::arg("seed") = 0);

    mod.def("clock_shift", [](int r, const NpMatrix& basis) {
        WeylPair p = clock_shift(r, to_matrix(basis));
        return py::make_tuple(to_numpy(p.u), to_numpy(p.v), p.lambda);
    }, py::arg("r"), py::arg("basis"));

    mod.def("solve_commutator_equation", [](const FaithfulState& s, const NpMatrix& t) {
        return to_numpy(solve_commutator_equation(s, to_matrix(t)));
    }, py::arg("state"), py::arg("t"));

    mod.def("unitality_defect", [](const LindbladGenerator& g) {
        return unitality_defect(g);
    }, py::arg("gen"));

    mod.def("invariance_defect", [](const LindbladGenerator& g, const FaithfulState& s) {
        return invariance_defect(g, s);
    }, py::arg("gen"), py::arg("state"));

    mod.def("admits_preserving_drift", [](const std::vector<NpMatrix>& kraus,
                                          const FaithfulState& s) {
        const auto ops = to_matrices(kraus);
        if (ops.empty()) throw EmptyInput("need at least one operator");
        CriterionResult res = admits_preserving_drift(cp_superoperator(ops, s.r), s);
        return py::make_tuple(res.holds, res.residual);
    }, py::arg("kraus"), py::arg("state"));

    mod.def("build_preserving", [](const FaithfulState& s, const std::vector<NpMatrix>& kraus) {
        return build_preserving(s, to_matrices(kraus));
    }, py::arg("state"), py::arg("kraus"));

    mod.def("purity_verdict", [](const LindbladGenerator& g, const FaithfulState& s) {
        return purity_verdict(g, s);
    }, py::arg("gen"), py::arg("state"));

    mod.def("spectral_gap", [](const LindbladGenerator& g, const FaithfulState& s) {
        SpectralGap gap = spectral_gap(as_superoperator(g), s);
        return py::make_tuple(gap.epsilon, gap.constant);
    }, py::arg("gen"), py::arg("state"));

    mod.def("trajectory", [](const LindbladGenerator& g, const FaithfulState& s,
                             const NpMatrix& rho0, const std::vector<double>& times) {
        return trajectory(g, s, to_matrix(rho0), times);
    }, py::arg("gen"), py::arg("state"), py::arg("rho0"), py::arg("times"));

    mod.def("perturbation_demo", [](const FaithfulState& s, double eps) {
        return perturbation_demo(s, eps);
    }, py::arg("state"), py::arg("eps"));

    mod.def("depolarizing_generator", [](const FaithfulState& s) {
        return depolarizing_generator(s);
    }, py::arg("state"));

    mod.def("build_pure_model", [](const std::vector<double>& lams, int n, std::uint64_t seed) {
        return build_pure_model(lams, n, seed);
    }, py::arg("eigenvalue_list"), py::arg("n"), py::arg("seed") = 0);

    mod.def("numerical_index", [](const LindbladGenerator& g) {
        return numerical_index(g).index;
    }, py::arg("gen"));

    mod.def("model_to_json", [](const PureFlowModel& m) {
        return model_to_json(m).dump(2);
    }, py::arg("model"));

    mod.def("model_from_json", [](const std::string& text) {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) throw SchemaViolation("invalid json");
        return model_from_json(j);
    }, py::arg("text"));
}
