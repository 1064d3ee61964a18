#include <doctest.h>

#include <cmath>

#include "perihom/assembly.hpp"
#include "perihom/fine_solver.hpp"
#include "perihom/macro_solver.hpp"

using namespace perihom;

namespace {
const MaterialSpec kIso11 = MaterialSpec::isotropic(1.0, 1.0);

EffectiveModel empty_cell_model(const LoadSpec& load) {
    const Mesh m = generate_cell_mesh(CellGeometry::empty(), 0.125);
    return EffectiveModel::build(solve_correctors(m, kIso11, 1e-12), load);
}
}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("macro: zero loads give the zero solution") {
    const LoadSpec zero = LoadSpec::constant({0.0, 0.0});
    const EffectiveModel model = empty_cell_model(zero);
    const Mesh mesh = generate_plain_mesh(MacroGeometry{}, 0.125);
    const MacroSolution sol = solve_homogenized(model, mesh, zero, 1e-10);
    for (const auto& v : sol.u0.values) {
        CHECK(std::abs(v.x) < 1e-14);
        CHECK(std::abs(v.y) < 1e-14);
    }
    CHECK(sol.compliance == 0.0);
}

TEST_CASE("macro: Dirichlet values are exactly zero on Gamma1") {
    const EffectiveModel model = empty_cell_model(LoadSpec::constant({0.0, -1.0}));
    const Mesh mesh = generate_plain_mesh(MacroGeometry{}, 0.0625);
    const MacroSolution sol =
        solve_homogenized(model, mesh, LoadSpec::constant({0.0, -1.0}), 1e-10);
    const auto g1 = mesh.nodes_on_tag(BoundaryTag::Gamma1);
    int clamped = 0;
    for (int i = 0; i < mesh.node_count(); ++i) {
        if (!g1[i]) continue;
        CHECK(sol.u0.values[i].x == 0.0);
        CHECK(sol.u0.values[i].y == 0.0);
        ++clamped;
    }
    CHECK(clamped > 0);
}

TEST_CASE("macro: uniaxial extension against a refined oracle") {
    // Empty-cell model, theta_tilde = 0, pull on the right edge only.
    LoadSpec load = LoadSpec::constant({0.0, 0.0});
    load.traction[static_cast<int>(MacroEdge::Right)] = {1.0, 0.0};
    const EffectiveModel model = empty_cell_model(load);
    CHECK(model.theta_tilde == 0.0);

    const Mesh coarse = generate_plain_mesh(MacroGeometry{}, 1.0 / 16.0);
    const MacroSolution sol_c = solve_homogenized(model, coarse, load, 1e-12);
    Mesh fine = coarse;
    fine = refine(refine(fine));
    const MacroSolution sol_f = solve_homogenized(model, fine, load, 1e-12);

    // Compare the horizontal displacement at the midpoint of the right edge
    // (a shared node of the nested meshes).
    auto value_at = [](const Mesh& m, const NodalField& u, Vec2 p) {
        for (int i = 0; i < m.node_count(); ++i)
            if ((m.nodes[i] - p).norm() < 1e-12) return u.values[i].x;
        throw InvariantError("probe node missing");
    };
    const double uc = value_at(coarse, sol_c.u0, {1.0, 0.5});
    const double uf = value_at(fine, sol_f.u0, {1.0, 0.5});
    CHECK(std::abs(uc - uf) <= 0.02 * std::abs(uf));
    CHECK(uf > 0.0);
}

TEST_CASE("macro: self-convergence of the displacement field") {
    const LoadSpec load = LoadSpec::constant({0.0, -1.0});
    const EffectiveModel model = empty_cell_model(load);
    Mesh m = generate_plain_mesh(MacroGeometry{}, 0.125);
    std::vector<MacroSolution> sols;
    std::vector<Mesh> meshes;
    for (int level = 0; level < 3; ++level) {
        meshes.push_back(m);
        sols.push_back(solve_homogenized(model, m, load, 1e-12));
        m = refine(m);
    }
    // Successive differences at shared (coarse) nodes must shrink.
    double prev = 1e300;
    for (int level = 0; level + 1 < 3; ++level) {
        double diff = 0.0;
        const Mesh& cm = meshes[level];
        const Mesh& fm = meshes[level + 1];
        for (int i = 0; i < cm.node_count(); ++i)
            diff = std::max(diff, (sols[level].u0.values[i] -
                                   sols[level + 1].u0.values[i]).norm());
        (void)fm;
        CHECK(diff < prev);
        prev = diff;
    }
}

TEST_CASE("macro: compliance Galerkin identity and positivity") {
    const LoadSpec load = LoadSpec::constant({0.0, -1.0});
    const EffectiveModel model = empty_cell_model(load);
    const Mesh mesh = generate_plain_mesh(MacroGeometry{}, 1.0 / 32.0);
    const MacroSolution sol = solve_homogenized(model, mesh, load, 1e-12);

    DofMapOptions opt;
    opt.clamp_gamma1 = true;
    const DofMap dofs = make_dof_map(mesh, opt);
    TripletBuffer buf(dofs.n_reduced);
    add_elastic(buf, mesh, dofs, [&](Vec2) { return model.q_mandel; });
    if (model.theta_tilde != 0.0) add_volume_mass(buf, mesh, dofs, model.theta_tilde);
    const auto K = buf.build();
    const auto u = restrict_field(dofs, sol.u0);
    const auto ku = K.mul(u);
    double energy = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) energy += u[i] * ku[i];

    CHECK(sol.compliance > 0.0);
    CHECK(std::abs(sol.compliance - energy) <= 1e-8 * sol.compliance);
}

TEST_CASE("macro: doubling theta_tilde strictly reduces compliance") {
    const LoadSpec load = LoadSpec::constant({0.0, -1.0});
    const Mesh cell = generate_cell_mesh(CellGeometry::disk(0.25), 0.05);
    const EffectiveModel model = EffectiveModel::build(solve_correctors(cell, kIso11, 1e-11), load);
    REQUIRE(model.theta_tilde > 0.0);
    EffectiveModel doubled = model;
    doubled.theta_tilde *= 2.0;

    const Mesh mesh = generate_plain_mesh(MacroGeometry{}, 1.0 / 32.0);
    const double c1 = solve_homogenized(model, mesh, load, 1e-12).compliance;
    const double c2 = solve_homogenized(doubled, mesh, load, 1e-12).compliance;
    CHECK(c2 < c1);
}

TEST_CASE("macro: uniqueness under different CG starting vectors") {
    const LoadSpec load = LoadSpec::constant({0.0, -1.0});
    const EffectiveModel model = empty_cell_model(load);
    const Mesh mesh = generate_plain_mesh(MacroGeometry{}, 1.0 / 16.0);

    DofMapOptions opt;
    opt.clamp_gamma1 = true;
    const DofMap dofs = make_dof_map(mesh, opt);
    TripletBuffer buf(dofs.n_reduced);
    add_elastic(buf, mesh, dofs, [&](Vec2) { return model.q_mandel; });
    const auto K = buf.build();
    std::vector<double> rhs(static_cast<std::size_t>(dofs.n_reduced), 0.0);
    add_volume_load(rhs, mesh, dofs, [&](Vec2) { return model.f_tilde; });

    const auto xa = cg_solve(K, rhs, 1e-12).x;
    std::vector<double> start(rhs.size(), 0.37);
    const auto xb = cg_solve(K, rhs, 1e-12, -1, &start).x;
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < xa.size(); ++i) {
        scale = std::max(scale, std::abs(xa[i]));
        diff = std::max(diff, std::abs(xa[i] - xb[i]));
    }
    CHECK(diff <= 1e-9 * scale);
}

TEST_CASE("fine: zero loads give the zero solution") {
    const Mesh mesh = generate_macro_mesh(MacroGeometry{}, CellGeometry::disk(0.25), 0.25, 0.025);
    const FineSolution sol =
        solve_fine(mesh, kIso11, LoadSpec::constant({0.0, 0.0}), 1e-10);
    for (const auto& v : sol.u.values) {
        CHECK(v.x == 0.0);
        CHECK(v.y == 0.0);
    }
    CHECK(sol.energy_norm == 0.0);
    CHECK(sol.surface_l2 == 0.0);
}

TEST_CASE("fine: default configuration produces finite positive diagnostics") {
    const Mesh mesh = generate_macro_mesh(MacroGeometry{}, CellGeometry::disk(0.25), 0.25, 0.025);
    const FineSolution sol =
        solve_fine(mesh, kIso11, LoadSpec::constant({0.0, -1.0}), 1e-10);
    CHECK(sol.energy_norm > 0.0);
    CHECK(sol.surface_l2 > 0.0);
    CHECK(std::isfinite(sol.energy_norm));
    CHECK(std::isfinite(sol.h1_norm));
    CHECK(sol.report.converged);
    CHECK(sol.report.relative_residual <= 1e-10);
}

TEST_CASE("fine: energy balance against the load functional") {
    const double eps = 0.25;
    const Mesh mesh = generate_macro_mesh(MacroGeometry{}, CellGeometry::disk(0.25), eps, 0.025);
    const LoadSpec load = LoadSpec::constant({0.0, -1.0});
    const FineSolution sol = solve_fine(mesh, kIso11, load, 1e-12);

    DofMapOptions opt;
    opt.clamp_gamma1 = true;
    const DofMap dofs = make_dof_map(mesh, opt);
    std::vector<double> rhs(static_cast<std::size_t>(dofs.n_reduced), 0.0);
    add_volume_load(rhs, mesh, dofs, [&](Vec2 x) { return load.f_at(x); });
    const auto u = restrict_field(dofs, sol.u);
    double work = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) work += rhs[i] * u[i];
    CHECK(std::abs(work - sol.energy_norm * sol.energy_norm) <= 1e-8 * work);

    // Robin part contributes nonnegative energy.
    TripletBuffer mbuf(dofs.n_reduced);
    add_surface_mass(mbuf, mesh, dofs, BoundaryTag::Hole,
                     [&](Vec2 x) { return kIso11.theta_at(mesh.cell, x / eps); }, eps);
    const auto M = mbuf.build();
    const auto mu = M.mul(u);
    double robin = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) robin += u[i] * mu[i];
    CHECK(robin >= 0.0);
    CHECK(robin == doctest::Approx(sol.surface_l2).epsilon(1e-10));
}

TEST_CASE("fine with empty inclusions reproduces the homogenized solve") {
    const LoadSpec load = LoadSpec::constant({0.0, -1.0});
    const double h = 1.0 / 16.0;
    const Mesh fine_mesh = generate_macro_mesh(MacroGeometry{}, CellGeometry::empty(), 0.25, h);
    const FineSolution fine = solve_fine(fine_mesh, kIso11, load, 1e-12);

    const EffectiveModel model = empty_cell_model(load);
    const Mesh plain = generate_plain_mesh(MacroGeometry{}, h);
    const MacroSolution macro = solve_homogenized(model, plain, load, 1e-12);

    REQUIRE(fine_mesh.node_count() == plain.node_count());
    double scale = 0.0;
    for (const auto& v : macro.u0.values) scale = std::max(scale, v.norm());
    for (int i = 0; i < plain.node_count(); ++i) {
        CHECK(std::abs(fine.u.values[i].x - macro.u0.values[i].x) <= 1e-8 * scale);
        CHECK(std::abs(fine.u.values[i].y - macro.u0.values[i].y) <= 1e-8 * scale);
    }
}

TEST_CASE("a priori quantities of injected fields") {
    const double eps = 0.25;
    const Mesh mesh = generate_macro_mesh(MacroGeometry{}, CellGeometry::disk(0.25), eps, 0.025);

    const auto [h1_zero, surf_zero] = apriori_quantities(mesh, NodalField::zero(mesh), eps);
    CHECK(h1_zero == 0.0);
    CHECK(surf_zero == 0.0);

    const auto [h1, surf] = apriori_quantities(mesh, NodalField::constant(mesh, {1.0, 0.0}), eps);
    CHECK(h1 * h1 == doctest::Approx(mesh.total_area()).epsilon(1e-12));
    CHECK(surf == doctest::Approx(eps * mesh.boundary_length(BoundaryTag::Hole)).epsilon(1e-12));
}

TEST_CASE("a priori quantities stay bounded over a short sweep") {
    const LoadSpec load = LoadSpec::constant({0.0, -1.0});
    double first = 0.0;
    for (double eps : {0.25, 0.125}) {
        const Mesh mesh =
            generate_macro_mesh(MacroGeometry{}, CellGeometry::disk(0.25), eps, eps / 10.0);
        const FineSolution sol = solve_fine(mesh, kIso11, load, 1e-10);
        if (first == 0.0)
            first = sol.h1_norm;
        else
            CHECK(sol.h1_norm <= 1.05 * first);
    }
}

}  // TEST_SUITE
