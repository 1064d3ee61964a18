#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "perihom/harness.hpp"

namespace py = pybind11;
using namespace perihom;

namespace {

py::list mat3_to_list(const Mat3& m) {
    py::list rows;
    for (int i = 0; i < 3; ++i) {
        py::list row;
        for (int j = 0; j < 3; ++j) row.append(m(i, j));
        rows.append(row);
    }
    return rows;
}

py::dict row_to_dict(const SweepRow& r) {
    py::dict d;
    d["eps"] = r.eps;
    d["h"] = r.h;
    d["dofs"] = r.dofs;
    d["iterations"] = r.iterations;
    d["energy_norm"] = r.energy_norm;
    d["h1_norm"] = r.h1_norm;
    d["surface_l2"] = r.surface_l2;
    d["l2_err"] = r.l2_err;
    d["l2_rel"] = r.l2_rel;
    d["h1_plain"] = r.h1_plain;
    d["h1_corrected"] = r.h1_corrected;
    d["vol_gap"] = r.vol_gap;
    d["surf_gap"] = r.surf_gap;
    return d;
}

RunConfig config_from_dict(const py::dict& overrides) {
    KeyValues kv;
    for (auto item : overrides)
        kv[py::cast<std::string>(item.first)] = py::cast<std::string>(py::str(item.second));
    return RunConfig::from_keyvalues(kv);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "periodic homogenization toolkit: cell correctors, effective elasticity "
              "tensor, homogenized and fine-scale elasticity solves";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<SolverError>(m, "SolverError");
    py::register_exception<InvariantError>(m, "InvariantError");

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>())
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });

    py::class_<CellGeometry>(m, "CellGeometry")
        .def_static("disk", &CellGeometry::disk, py::arg("radius"))
        .def_static("square", &CellGeometry::square, py::arg("half_width"))
        .def_static("empty", &CellGeometry::empty)
        .def("vol_inclusion", &CellGeometry::vol_inclusion)
        .def("vol_solid", &CellGeometry::vol_solid)
        .def("perim_inclusion", &CellGeometry::perim_inclusion)
        .def("inside_inclusion",
             [](const CellGeometry& c, double x, double y) { return c.inside_inclusion({x, y}); })
        .def("signed_distance",
             [](const CellGeometry& c, double x, double y) { return c.signed_distance({x, y}); });

    m.def("periodic_wrap", [](double x, double y) {
        const Vec2 w = periodic_wrap({x, y});
        return py::make_tuple(w.x, w.y);
    });

    py::class_<MacroGeometry>(m, "MacroGeometry")
        .def(py::init<>())
        .def_readwrite("x_min", &MacroGeometry::x_min)
        .def_readwrite("x_max", &MacroGeometry::x_max)
        .def_readwrite("y_min", &MacroGeometry::y_min)
        .def_readwrite("y_max", &MacroGeometry::y_max)
        .def("area", &MacroGeometry::area);

    py::class_<LatticeIndexSet>(m, "LatticeIndexSet")
        .def_readonly("eps", &LatticeIndexSet::eps)
        .def_readonly("cells", &LatticeIndexSet::cells);

    m.def("lattice_cells", &lattice_cells, py::arg("macro"), py::arg("cell"), py::arg("eps"));
    m.def("surface_measure_deficit", &surface_measure_deficit, py::arg("macro"), py::arg("cell"),
          py::arg("eps"));

    py::class_<Mesh>(m, "Mesh")
        .def_property_readonly("nodes",
                               [](const Mesh& mesh) {
                                   py::list out;
                                   for (const auto& n : mesh.nodes)
                                       out.append(py::make_tuple(n.x, n.y));
                                   return out;
                               })
        .def_property_readonly("triangles",
                               [](const Mesh& mesh) {
                                   py::list out;
                                   for (const auto& t : mesh.triangles)
                                       out.append(py::make_tuple(t[0], t[1], t[2]));
                                   return out;
                               })
        .def_property_readonly("h", [](const Mesh& mesh) { return mesh.h; })
        .def("node_count", &Mesh::node_count)
        .def("triangle_count", &Mesh::triangle_count)
        .def("total_area", &Mesh::total_area)
        .def("hole_loop_count", [](const Mesh& mesh) { return mesh.hole_loops().size(); })
        .def("validate", &Mesh::validate);

    m.def("generate_cell_mesh", &generate_cell_mesh, py::arg("cell"), py::arg("h"),
          py::arg("symmetric_pattern") = false);
    m.def("generate_macro_mesh", &generate_macro_mesh, py::arg("macro"), py::arg("cell"),
          py::arg("eps"), py::arg("h"));
    m.def("generate_plain_mesh", &generate_plain_mesh, py::arg("macro"), py::arg("h"));
    m.def("refine", &refine, py::arg("mesh"));

    py::class_<MaterialSpec>(m, "MaterialSpec")
        .def_static("isotropic", &MaterialSpec::isotropic, py::arg("lam"), py::arg("mu"))
        .def("validate", &MaterialSpec::validate);

    py::class_<LoadSpec>(m, "LoadSpec")
        .def_static("constant",
                    [](double fx, double fy) { return LoadSpec::constant({fx, fy}); });

    py::class_<CorrectorSet>(m, "CorrectorSet")
        .def("evaluate",
             [](const CorrectorSet& s, int i, int j, double x, double y) {
                 const Vec2 v = s.evaluate(i, j, {x, y});
                 return py::make_tuple(v.x, v.y);
             })
        .def("energy", &CorrectorSet::energy)
        .def("chi_l2_norm", [](const CorrectorSet& s, int i, int j) {
            return l2_norm(s.mesh(), s.chi(i, j));
        });

    m.def(
        "solve_correctors",
        [](const Mesh& mesh, const MaterialSpec& mat, double tol) {
            return solve_correctors(mesh, mat, tol);
        },
        py::arg("cell_mesh"), py::arg("material"), py::arg("tol") = 1e-10);

    py::class_<EffectiveModel>(m, "EffectiveModel")
        .def_property_readonly("q_mandel",
                               [](const EffectiveModel& e) { return mat3_to_list(e.q_mandel); })
        .def_readonly("theta_tilde", &EffectiveModel::theta_tilde)
        .def_property_readonly(
            "f_tilde",
            [](const EffectiveModel& e) { return py::make_tuple(e.f_tilde.x, e.f_tilde.y); })
        .def("q", &EffectiveModel::q)
        .def("hooke", [](const EffectiveModel& e, double e11, double e22, double e12) {
            const Sym2 s = e.hooke({e11, e22, e12});
            return py::make_tuple(s.m11, s.m22, s.m12);
        });

    m.def("build_effective_model", &EffectiveModel::build, py::arg("correctors"), py::arg("load"));

    py::class_<MacroSolution>(m, "MacroSolution")
        .def_readonly("compliance", &MacroSolution::compliance)
        .def_property_readonly("u0", [](const MacroSolution& s) {
            py::list out;
            for (const auto& v : s.u0.values) out.append(py::make_tuple(v.x, v.y));
            return out;
        });

    m.def(
        "solve_homogenized",
        [](const EffectiveModel& model, const Mesh& mesh, const LoadSpec& load, double tol) {
            return solve_homogenized(model, mesh, load, tol);
        },
        py::arg("model"), py::arg("plain_mesh"), py::arg("load"), py::arg("tol") = 1e-10);

    py::class_<FineSolution>(m, "FineSolution")
        .def_readonly("eps", &FineSolution::eps)
        .def_readonly("dofs", &FineSolution::dofs)
        .def_readonly("energy_norm", &FineSolution::energy_norm)
        .def_readonly("h1_norm", &FineSolution::h1_norm)
        .def_readonly("surface_l2", &FineSolution::surface_l2);

    m.def(
        "solve_fine",
        [](const Mesh& mesh, const MaterialSpec& mat, const LoadSpec& load, double tol,
           bool oscillating_f) { return solve_fine(mesh, mat, load, tol, oscillating_f); },
        py::arg("perforated_mesh"), py::arg("material"), py::arg("load"), py::arg("tol") = 1e-10,
        py::arg("oscillating_f") = false);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_static("from_file", &RunConfig::from_file)
        .def_static("from_overrides", &config_from_dict)
        .def_readwrite("cell_h", &RunConfig::cell_h)
        .def_readwrite("macro_h", &RunConfig::macro_h)
        .def_readwrite("tol", &RunConfig::tol)
        .def_readwrite("eps_list", &RunConfig::eps_list)
        .def_readwrite("out_dir", &RunConfig::out_dir);

    m.def(
        "run_pipeline",
        [](const RunConfig& cfg, bool write_outputs) {
            const SweepReport report = run_pipeline(cfg, write_outputs);
            py::dict out;
            py::list rows;
            for (const auto& r : report.rows) rows.append(row_to_dict(r));
            out["rows"] = rows;
            out["q_mandel"] = mat3_to_list(report.model.q_mandel);
            out["theta_tilde"] = report.model.theta_tilde;
            out["f_tilde"] = py::make_tuple(report.model.f_tilde.x, report.model.f_tilde.y);
            out["monotone_l2_rel"] = report.monotone_l2_rel;
            out["monotone_vol_gap"] = report.monotone_vol_gap;
            out["monotone_surf_gap"] = report.monotone_surf_gap;
            out["apriori_bounded"] = report.apriori_bounded;
            return out;
        },
        py::arg("config"), py::arg("write_outputs") = false);
}
