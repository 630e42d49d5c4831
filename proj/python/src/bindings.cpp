#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lightcone/bonnet.hpp"
#include "lightcone/errors.hpp"
#include "lightcone/spaceform.hpp"
#include "lightcone/triorth.hpp"
#include "lightcone/weingarten.hpp"

namespace py = pybind11;
using namespace lightcone;

namespace {

// f of a synthesized net as an (N1 N2 Nr, dim) array in grid order.
Eigen::MatrixXd net_points(const NetGrid& net) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(net.f.size()), net.f.front().size());
    for (std::size_t i = 0; i < net.f.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = net.f[i].transpose();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Light-cone model of conformal geometry: Weingarten families and Guichard nets";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<UsageError>(m, "UsageError", error);
    py::register_exception<InfinityBoundaryError>(m, "InfinityBoundaryError", error);
    py::register_exception<ExcludedCaseError>(m, "ExcludedCaseError", error);
    py::register_exception<SingularNetError>(m, "SingularNetError", error);
    py::register_exception<DomainError>(m, "DomainError", error);

    py::class_<WeingartenFamily>(m, "WeingartenFamily")
        .def_readonly("k", &WeingartenFamily::k)
        .def_readonly("a1", &WeingartenFamily::a1)
        .def_readonly("a2", &WeingartenFamily::a2)
        .def_readonly("eps2", &WeingartenFamily::eps2)
        .def("cK", [](const WeingartenFamily& wf, double t) { return wf.cK(t); })
        .def("cH", [](const WeingartenFamily& wf, double t) { return wf.cH(t); })
        .def("c", [](const WeingartenFamily& wf, double t) { return wf.c(t); })
        .def("__repr__", [](const WeingartenFamily& wf) {
            return "WeingartenFamily(k=" + std::to_string(wf.k) + ", a1=" + std::to_string(wf.a1) +
                   ", a2=" + std::to_string(wf.a2) + ", eps2=" + std::to_string(wf.eps2) + ")";
        });

    m.def("family_coeffs", &family_coeffs, py::arg("k"), py::arg("a1"), py::arg("a2"), py::arg("eps2"));
    m.def("case_invariant", &case_invariant, py::arg("family"), py::arg("t"));

    py::class_<PrincipalCurvatures>(m, "PrincipalCurvatures")
        .def_readonly("k1", &PrincipalCurvatures::k1)
        .def_readonly("k2", &PrincipalCurvatures::k2)
        .def_readonly("blowup", &PrincipalCurvatures::blowup)
        .def_property_readonly("gauss", &PrincipalCurvatures::gauss)
        .def_property_readonly("mean", &PrincipalCurvatures::mean);
    m.def("principal_curvatures_at", &principal_curvatures_at, py::arg("family"), py::arg("u"), py::arg("t"));

    m.def("branch_cross_ratio", [](const WeingartenFamily& wf) { return branch_cross_ratio(branch_points(wf)); },
          py::arg("family"));

    py::enum_<SurfaceKind>(m, "SurfaceKind")
        .value("constant_mean_curvature", SurfaceKind::constant_mean_curvature)
        .value("constant_gauss_curvature", SurfaceKind::constant_gauss_curvature)
        .value("constant_radii_sum", SurfaceKind::constant_radii_sum);
    py::enum_<TorusType>(m, "TorusType")
        .value("rectangular", TorusType::rectangular)
        .value("rhombic", TorusType::rhombic)
        .value("square", TorusType::square)
        .value("degenerate_cylinder", TorusType::degenerate_cylinder)
        .value("unclassified", TorusType::unclassified);

    py::class_<SpecialSurface>(m, "SpecialSurface")
        .def_readonly("t", &SpecialSurface::t)
        .def_readonly("kind", &SpecialSurface::kind)
        .def_readonly("value", &SpecialSurface::value);
    py::class_<Relation>(m, "Relation")
        .def_readonly("name", &Relation::name)
        .def_readonly("applicable", &Relation::applicable)
        .def_readonly("residual", &Relation::residual)
        .def_readonly("note", &Relation::note);
    py::class_<BonnetReport>(m, "BonnetReport")
        .def_readonly("family", &BonnetReport::family)
        .def_readonly("surfaces", &BonnetReport::surfaces)
        .def_readonly("relations", &BonnetReport::relations)
        .def_readonly("cross_ratio", &BonnetReport::cross_ratio)
        .def_readonly("torus", &BonnetReport::torus)
        .def_readonly("case_table_ok", &BonnetReport::case_table_ok)
        .def("count", &BonnetReport::count);

    m.def("classify", py::overload_cast<const WeingartenFamily&>(&classify), py::arg("family"));
    m.def("distance", &distance, py::arg("k"), py::arg("t_a"), py::arg("t_b"));
    m.def("torus_type", py::overload_cast<double, std::complex<double>, double>(&torus_type), py::arg("k"),
          py::arg("cross_ratio"), py::arg("tol") = 1e-9);

    py::class_<SynthesizedNet>(m, "SynthesizedNet")
        .def_property_readonly("points", [](const SynthesizedNet& sn) { return net_points(sn.net); })
        .def_property_readonly("shape", [](const SynthesizedNet& sn) {
            const auto& a = sn.net.grid.axes;
            return py::make_tuple(a[0].count, a[1].count, a[2].count);
        })
        .def_readonly("loop_defect", &SynthesizedNet::loop_defect)
        .def("guichard_residual", [](const SynthesizedNet& sn, int imaginary_axis) {
            return guichard_residual(lame_from_grid(sn.net), imaginary_axis);
        }, py::arg("imaginary_axis") = 0);

    m.def(
        "synthesize_net",
        [](const WeingartenFamily& wf, int n, int nr, std::pair<double, double> t_box, std::pair<double, double> r_range) {
            const NetSpec spec{Axis::span(t_box.first, t_box.second, n), Axis::span(t_box.first, t_box.second, n),
                               Axis::span(r_range.first, r_range.second, nr)};
            return synthesize_net(wf, UProfile{}, spec);
        },
        py::arg("family"), py::arg("n") = 16, py::arg("nr") = 16, py::arg("t_box") = std::pair{-0.2, 0.2},
        py::arg("r_range") = std::pair{-0.7, 0.7});

    m.def(
        "geodesic_point",
        [](double k, const Eigen::VectorXd& p, const Eigen::VectorXd& s, double t) -> Eigen::VectorXd {
            const SpaceForm q = canonical_space_form(k, static_cast<int>(p.size()) - 2);
            return geodesic_point(q, LightPoint(MinkVec(p)), MinkVec(s), t).vec().coords();
        },
        py::arg("k"), py::arg("p"), py::arg("s"), py::arg("t"));
    m.def("origin_point", [](int n) -> Eigen::VectorXd { return origin_point(n).coords(); }, py::arg("n") = 3);
}
