#include "perihom/fine_solver.hpp"

#include <cmath>

#include "perihom/assembly.hpp"

namespace perihom {

namespace {
const double kGaussA = 0.5 - 0.5 / std::sqrt(3.0);
const double kGaussB = 0.5 + 0.5 / std::sqrt(3.0);
}

FineSolution solve_fine(std::shared_ptr<const Mesh> mesh_ptr, const MaterialSpec& mat,
                        const LoadSpec& load, double tol, bool oscillating_f) {
    const Mesh& mesh = *mesh_ptr;
    if (mesh.kind != MeshKind::Macro)
        throw ConfigError("solve_fine requires a perforated macro mesh");
    mat.validate();
    const double eps = mesh.eps;

    DofMapOptions opt;
    opt.clamp_gamma1 = true;
    const DofMap dofs = make_dof_map(mesh, opt);

    TripletBuffer buf(dofs.n_reduced);
    add_elastic(buf, mesh, dofs, [&](Vec2 x) { return mat.mandel_at(x / eps); });
    add_surface_mass(buf, mesh, dofs, BoundaryTag::Hole,
                     [&](Vec2 x) { return mat.theta_at(mesh.cell, x / eps); }, eps);
    const SparseSymMatrix K = buf.build();

    std::vector<double> rhs(static_cast<std::size_t>(dofs.n_reduced), 0.0);
    if (oscillating_f)
        add_volume_load(rhs, mesh, dofs, [&](Vec2 x) { return load.f_at(x / eps); });
    else
        add_volume_load(rhs, mesh, dofs, [&](Vec2 x) { return load.f_at(x); });
    add_traction_load(rhs, mesh, dofs, mesh.macro, load.traction);

    FineSolution sol;
    sol.eps = eps;
    sol.dofs = dofs.n_reduced;
    const std::vector<double> x = cg_solve_checked(K, rhs, tol, &sol.report);
    sol.u = expand_solution(dofs, x);
    sol.mesh = std::move(mesh_ptr);

    const std::vector<double> kx = K.mul(x);
    double energy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) energy += x[i] * kx[i];
    sol.energy_norm = std::sqrt(std::max(0.0, energy));
    const auto [h1, surf] = apriori_quantities(mesh, sol.u, eps);
    sol.h1_norm = h1;
    sol.surface_l2 = surf;
    return sol;
}

FineSolution solve_fine(const Mesh& mesh, const MaterialSpec& mat, const LoadSpec& load,
                        double tol, bool oscillating_f) {
    return solve_fine(std::make_shared<Mesh>(mesh), mat, load, tol, oscillating_f);
}

std::pair<double, double> apriori_quantities(const Mesh& mesh, const NodalField& u, double eps) {
    const double l2 = l2_norm(mesh, u);
    const double semi = h1_seminorm(mesh, u);
    const double h1 = std::sqrt(l2 * l2 + semi * semi);

    double surf = 0.0;
    for (const auto& e : mesh.boundary_edges) {
        if (e.tag != BoundaryTag::Hole) continue;
        const Vec2 pa = mesh.nodes[e.a], pb = mesh.nodes[e.b];
        const Vec2 ua = u.values[e.a], ub = u.values[e.b];
        const double len = (pb - pa).norm();
        for (double g : {kGaussA, kGaussB}) {
            const Vec2 v = ua + (ub - ua) * g;
            surf += 0.5 * len * v.norm2();
        }
    }
    return {h1, eps * surf};
}

}  // namespace perihom
