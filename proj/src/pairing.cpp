#include "perihom/pairing.hpp"

#include <cmath>

namespace perihom {

namespace {
const double kGaussA = 0.5 - 0.5 / std::sqrt(3.0);
const double kGaussB = 0.5 + 0.5 / std::sqrt(3.0);

double component(Vec2 v, int c) { return c == 0 ? v.x : v.y; }

// int_Omega u0^c psi_m dx on the plain macro mesh (3-point Gauss).
double macro_moment(const Mesh& mesh, const NodalField& u0, int c, const MacroFn& psi) {
    double s = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tr = mesh.triangles[t];
        const Vec2 p[3] = {mesh.nodes[tr[0]], mesh.nodes[tr[1]], mesh.nodes[tr[2]]};
        const Vec2 u[3] = {u0.values[tr[0]], u0.values[tr[1]], u0.values[tr[2]]};
        const double w = mesh.triangle_area(t) / 3.0;
        for (int e = 0; e < 3; ++e) {
            const Vec2 pm = (p[e] + p[(e + 1) % 3]) * 0.5;
            const Vec2 um = (u[e] + u[(e + 1) % 3]) * 0.5;
            s += w * component(um, c) * psi(pm);
        }
    }
    return s;
}
}  // namespace

double volume_pairing_gap(const PairingContext& ctx, int c, const MacroFn& psi_macro,
                          const TrigPoly& psi_cell) {
    // Left side: fine-mesh quadrature of u_eps * psi(x, x/eps) over Omega^eps.
    double lhs = 0.0;
    const Mesh& fine = *ctx.fine;
    for (int t = 0; t < fine.triangle_count(); ++t) {
        const auto& tr = fine.triangles[t];
        const Vec2 p[3] = {fine.nodes[tr[0]], fine.nodes[tr[1]], fine.nodes[tr[2]]};
        const Vec2 u[3] = {ctx.u_eps->values[tr[0]], ctx.u_eps->values[tr[1]],
                           ctx.u_eps->values[tr[2]]};
        const double w = fine.triangle_area(t) / 3.0;
        for (int e = 0; e < 3; ++e) {
            const Vec2 pm = (p[e] + p[(e + 1) % 3]) * 0.5;
            const Vec2 um = (u[e] + u[(e + 1) % 3]) * 0.5;
            lhs += w * component(um, c) * psi_macro(pm) * psi_cell.eval(pm / ctx.eps);
        }
    }

    // Right side: the separated two-scale limit.
    double cell_integral = 0.0;
    const Mesh& cell = *ctx.cell;
    for (int t = 0; t < cell.triangle_count(); ++t) {
        const auto& tr = cell.triangles[t];
        const Vec2 p[3] = {cell.nodes[tr[0]], cell.nodes[tr[1]], cell.nodes[tr[2]]};
        const double w = cell.triangle_area(t) / 3.0;
        for (int e = 0; e < 3; ++e) cell_integral += w * psi_cell.eval((p[e] + p[(e + 1) % 3]) * 0.5);
    }
    const double rhs = macro_moment(*ctx.macro, *ctx.u0, c, psi_macro) * cell_integral;
    return std::abs(lhs - rhs);
}

double surface_pairing_gap(const PairingContext& ctx, int c, const MacroFn& psi_macro,
                           const TrigPoly& psi_cell, bool theta_mode) {
    if (theta_mode && !ctx.mat)
        throw ConfigError("theta-weighted surface pairing needs a material");
    const Mesh& fine = *ctx.fine;
    const CellGeometry& geom = fine.cell;

    double lhs = 0.0;
    for (const auto& e : fine.boundary_edges) {
        if (e.tag != BoundaryTag::Hole) continue;
        const Vec2 pa = fine.nodes[e.a], pb = fine.nodes[e.b];
        const Vec2 ua = ctx.u_eps->values[e.a], ub = ctx.u_eps->values[e.b];
        const double len = (pb - pa).norm();
        for (double g : {kGaussA, kGaussB}) {
            const Vec2 x = pa + (pb - pa) * g;
            const Vec2 u = ua + (ub - ua) * g;
            double w = psi_macro(x) * psi_cell.eval(x / ctx.eps);
            if (theta_mode) w *= ctx.mat->theta_at(geom, x / ctx.eps);
            lhs += 0.5 * len * component(u, c) * w;
        }
    }
    lhs *= ctx.eps;

    double cell_integral = 0.0;
    const Mesh& cell = *ctx.cell;
    for (const auto& e : cell.boundary_edges) {
        if (e.tag != BoundaryTag::Hole) continue;
        const Vec2 pa = cell.nodes[e.a], pb = cell.nodes[e.b];
        const double len = (pb - pa).norm();
        for (double g : {kGaussA, kGaussB}) {
            const Vec2 y = pa + (pb - pa) * g;
            double w = psi_cell.eval(y);
            if (theta_mode) w *= ctx.mat->theta_at(cell.cell, y);
            cell_integral += 0.5 * len * w;
        }
    }
    const double rhs = macro_moment(*ctx.macro, *ctx.u0, c, psi_macro) * cell_integral;
    return std::abs(lhs - rhs);
}

double surface_measure_deficit(const MacroGeometry& macro, const CellGeometry& cell, double eps) {
    const auto lattice = lattice_cells(macro, cell, eps);
    return macro.area() * cell.perim_inclusion() - scaled_surface_measure(lattice, cell);
}

}  // namespace perihom
