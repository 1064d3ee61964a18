#include "perihom/fields.hpp"

#include <cmath>

#include "perihom/assembly.hpp"

namespace perihom {

NodalField expand_solution(const DofMap& dofs, const std::vector<double>& reduced) {
    NodalField f;
    f.values.assign(static_cast<std::size_t>(dofs.n_nodes), Vec2{});
    for (int i = 0; i < dofs.n_nodes; ++i) {
        const int gx = dofs.dof(i, 0), gy = dofs.dof(i, 1);
        f.values[static_cast<std::size_t>(i)] = {
            gx >= 0 ? reduced[static_cast<std::size_t>(gx)] : 0.0,
            gy >= 0 ? reduced[static_cast<std::size_t>(gy)] : 0.0};
    }
    return f;
}

std::vector<double> restrict_field(const DofMap& dofs, const NodalField& f) {
    std::vector<double> r(static_cast<std::size_t>(dofs.n_reduced), 0.0);
    for (int i = 0; i < dofs.n_nodes; ++i) {
        const int gx = dofs.dof(i, 0), gy = dofs.dof(i, 1);
        if (gx >= 0) r[static_cast<std::size_t>(gx)] = f.values[static_cast<std::size_t>(i)].x;
        if (gy >= 0) r[static_cast<std::size_t>(gy)] = f.values[static_cast<std::size_t>(i)].y;
    }
    return r;
}

NodalField field_difference(const NodalField& a, const NodalField& b) {
    NodalField d;
    d.values.resize(a.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) d.values[i] = a.values[i] - b.values[i];
    return d;
}

double l2_norm(const Mesh& mesh, const NodalField& f) {
    // Edge-midpoint rule, exact for the quadratic |u|^2 of a P1 field.
    double s = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tr = mesh.triangles[t];
        const Vec2 u0 = f.values[tr[0]], u1 = f.values[tr[1]], u2 = f.values[tr[2]];
        const Vec2 m01 = (u0 + u1) * 0.5, m12 = (u1 + u2) * 0.5, m20 = (u2 + u0) * 0.5;
        s += mesh.triangle_area(t) / 3.0 * (m01.norm2() + m12.norm2() + m20.norm2());
    }
    return std::sqrt(s);
}

double h1_seminorm(const Mesh& mesh, const NodalField& f) {
    double s = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const StrainOp op = strain_op(mesh, t);
        const auto& tr = mesh.triangles[t];
        // Full gradient, recovered from the barycentric gradients in op.b:
        // row 0 stores d/dx, row 1 stores d/dy weights.
        double gxx = 0.0, gxy = 0.0, gyx = 0.0, gyy = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double bx = op.b[0][2 * i];
            const double by = op.b[1][2 * i + 1];
            const Vec2 u = f.values[tr[i]];
            gxx += bx * u.x;
            gxy += by * u.x;
            gyx += bx * u.y;
            gyy += by * u.y;
        }
        s += op.area * (gxx * gxx + gxy * gxy + gyx * gyx + gyy * gyy);
    }
    return std::sqrt(s);
}

Vec2 field_mean(const Mesh& mesh, const NodalField& f) {
    Vec2 acc{};
    double area = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tr = mesh.triangles[t];
        const double a = mesh.triangle_area(t);
        acc += (f.values[tr[0]] + f.values[tr[1]] + f.values[tr[2]]) * (a / 3.0);
        area += a;
    }
    return acc / area;
}

Sym2 element_strain(const Mesh& mesh, int t, const NodalField& f) {
    const StrainOp op = strain_op(mesh, t);
    const auto& tr = mesh.triangles[t];
    const auto s = op.strain({f.values[tr[0]], f.values[tr[1]], f.values[tr[2]]});
    return Sym2::from_mandel(s);
}

}  // namespace perihom
