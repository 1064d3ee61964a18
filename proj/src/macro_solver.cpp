#include "perihom/macro_solver.hpp"

#include "perihom/assembly.hpp"

namespace perihom {

MacroSolution solve_homogenized(const EffectiveModel& model, std::shared_ptr<const Mesh> mesh_ptr,
                                const LoadSpec& load, double tol) {
    const Mesh& mesh = *mesh_ptr;
    const bool has_gamma1 = mesh.boundary_count(BoundaryTag::Gamma1) > 0;
    if (!(model.theta_tilde > 0.0) && !has_gamma1)
        throw ConfigError("homogenized problem needs theta_tilde > 0 or a clamped edge");

    DofMapOptions opt;
    opt.clamp_gamma1 = true;
    const DofMap dofs = make_dof_map(mesh, opt);

    TripletBuffer buf(dofs.n_reduced);
    add_elastic(buf, mesh, dofs, [&](Vec2) { return model.q_mandel; });
    if (model.theta_tilde != 0.0) add_volume_mass(buf, mesh, dofs, model.theta_tilde);
    const SparseSymMatrix K = buf.build();

    std::vector<double> rhs(static_cast<std::size_t>(dofs.n_reduced), 0.0);
    add_volume_load(rhs, mesh, dofs, [&](Vec2) { return model.f_tilde; });
    add_traction_load(rhs, mesh, dofs, mesh.macro, load.traction);

    MacroSolution sol;
    sol.mesh = std::move(mesh_ptr);
    sol.u0 = expand_solution(dofs, cg_solve_checked(K, rhs, tol, &sol.report));
    sol.strain.reserve(static_cast<std::size_t>(mesh.triangle_count()));
    for (int t = 0; t < mesh.triangle_count(); ++t)
        sol.strain.push_back(element_strain(mesh, t, sol.u0));
    sol.compliance = compliance_value(model, mesh, sol.u0, load);
    return sol;
}

MacroSolution solve_homogenized(const EffectiveModel& model, const Mesh& mesh,
                                const LoadSpec& load, double tol) {
    return solve_homogenized(model, std::make_shared<Mesh>(mesh), load, tol);
}

double compliance_value(const EffectiveModel& model, const Mesh& mesh, const NodalField& u,
                        const LoadSpec& load) {
    // int f_tilde . u dx: exact for P1 (midpoint rule on each component).
    double value = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tr = mesh.triangles[t];
        const Vec2 sum = u.values[tr[0]] + u.values[tr[1]] + u.values[tr[2]];
        value += mesh.triangle_area(t) / 3.0 * model.f_tilde.dot(sum);
    }
    for (const auto& e : mesh.boundary_edges) {
        if (e.tag != BoundaryTag::Gamma2) continue;
        const Vec2 pa = mesh.nodes[e.a], pb = mesh.nodes[e.b];
        const Vec2 t = load.traction_on(mesh.macro.classify_edge(pa, pb));
        const Vec2 mid = (u.values[e.a] + u.values[e.b]) * 0.5;
        value += (pb - pa).norm() * t.dot(mid);
    }
    return value;
}

}  // namespace perihom
