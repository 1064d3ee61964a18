#include "perihom/assembly.hpp"

#include <cmath>

namespace perihom {

namespace {
const double kSqrtHalf = std::sqrt(0.5);

// 2-point Gauss positions on [0,1].
const double kGaussA = 0.5 - 0.5 / std::sqrt(3.0);
const double kGaussB = 0.5 + 0.5 / std::sqrt(3.0);
}  // namespace

std::array<double, 3> StrainOp::strain(const std::array<Vec2, 3>& u) const {
    std::array<double, 6> v = {u[0].x, u[0].y, u[1].x, u[1].y, u[2].x, u[2].y};
    std::array<double, 3> s{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 6; ++c) s[r] += b[r][c] * v[c];
    return s;
}

StrainOp strain_op(const Mesh& mesh, int t) {
    const auto& tr = mesh.triangles[t];
    const Vec2 p0 = mesh.nodes[tr[0]], p1 = mesh.nodes[tr[1]], p2 = mesh.nodes[tr[2]];
    const double a2 = cross(p1 - p0, p2 - p0);  // 2*area
    StrainOp op;
    op.area = 0.5 * a2;
    // Gradients of the barycentric basis functions.
    const double bx[3] = {(p1.y - p2.y) / a2, (p2.y - p0.y) / a2, (p0.y - p1.y) / a2};
    const double by[3] = {(p2.x - p1.x) / a2, (p0.x - p2.x) / a2, (p1.x - p0.x) / a2};
    for (int i = 0; i < 3; ++i) {
        op.b[0][2 * i] = bx[i];
        op.b[1][2 * i + 1] = by[i];
        op.b[2][2 * i] = kSqrtHalf * by[i];
        op.b[2][2 * i + 1] = kSqrtHalf * bx[i];
    }
    return op;
}

void add_elastic(TripletBuffer& buf, const Mesh& mesh, const DofMap& dofs,
                 const PointTensor& tensor_at_centroid) {
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const StrainOp op = strain_op(mesh, t);
        const Mat3 a = tensor_at_centroid(mesh.centroid(t));
        // K_e = area * B^T A B
        std::array<std::array<double, 6>, 3> ab{};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 6; ++c)
                ab[r][c] = a(r, 0) * op.b[0][c] + a(r, 1) * op.b[1][c] + a(r, 2) * op.b[2][c];
        const auto& tr = mesh.triangles[t];
        for (int li = 0; li < 6; ++li) {
            const int gi = dofs.dof(tr[li / 2], li % 2);
            if (gi < 0) continue;
            for (int lj = 0; lj < 6; ++lj) {
                const int gj = dofs.dof(tr[lj / 2], lj % 2);
                if (gj < 0) continue;
                double k = 0.0;
                for (int r = 0; r < 3; ++r) k += op.b[r][li] * ab[r][lj];
                buf.add(gi, gj, op.area * k);
            }
        }
    }
}

void add_surface_mass(TripletBuffer& buf, const Mesh& mesh, const DofMap& dofs, BoundaryTag tag,
                      const PointScalar& weight_at, double scale) {
    if (tag != BoundaryTag::Hole && tag != BoundaryTag::Gamma2)
        throw ConfigError("surface mass supports HOLE and GAMMA2 boundaries only");
    for (const auto& e : mesh.boundary_edges) {
        if (e.tag != tag) continue;
        const Vec2 pa = mesh.nodes[e.a], pb = mesh.nodes[e.b];
        const double len = (pb - pa).norm();
        double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
        for (double g : {kGaussA, kGaussB}) {
            const double w = 0.5 * len * weight_at(pa + (pb - pa) * g);
            const double phi[2] = {1.0 - g, g};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) m[i][j] += w * phi[i] * phi[j];
        }
        const int nodes[2] = {e.a, e.b};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int c = 0; c < 2; ++c)
                    buf.add(dofs.dof(nodes[i], c), dofs.dof(nodes[j], c), scale * m[i][j]);
    }
}

void add_volume_mass(TripletBuffer& buf, const Mesh& mesh, const DofMap& dofs, double scale) {
    // Edge-midpoint rule is exact for quadratics: int phi_i phi_j = A/12 off
    // the diagonal and A/6 on it.
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double a = mesh.triangle_area(t);
        const auto& tr = mesh.triangles[t];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double m = (i == j ? a / 6.0 : a / 12.0);
                for (int c = 0; c < 2; ++c)
                    buf.add(dofs.dof(tr[i], c), dofs.dof(tr[j], c), scale * m);
            }
    }
}

void add_volume_load(std::vector<double>& rhs, const Mesh& mesh, const DofMap& dofs,
                     const PointVec& f_at) {
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tr = mesh.triangles[t];
        const Vec2 p[3] = {mesh.nodes[tr[0]], mesh.nodes[tr[1]], mesh.nodes[tr[2]]};
        const double w = mesh.triangle_area(t) / 3.0;
        // Midpoint quadrature: point opposite vertex i has basis values
        // phi_i = 0, phi_{i+1} = phi_{i+2} = 1/2.
        const Vec2 mid[3] = {(p[1] + p[2]) * 0.5, (p[2] + p[0]) * 0.5, (p[0] + p[1]) * 0.5};
        const Vec2 fm[3] = {f_at(mid[0]), f_at(mid[1]), f_at(mid[2])};
        for (int i = 0; i < 3; ++i) {
            const Vec2 contrib = (fm[(i + 1) % 3] + fm[(i + 2) % 3]) * (0.5 * w);
            const int gx = dofs.dof(tr[i], 0), gy = dofs.dof(tr[i], 1);
            if (gx >= 0) rhs[static_cast<std::size_t>(gx)] += contrib.x;
            if (gy >= 0) rhs[static_cast<std::size_t>(gy)] += contrib.y;
        }
    }
}

void add_traction_load(std::vector<double>& rhs, const Mesh& mesh, const DofMap& dofs,
                       const MacroGeometry& macro, const std::array<Vec2, 4>& traction) {
    for (const auto& e : mesh.boundary_edges) {
        if (e.tag != BoundaryTag::Gamma2) continue;
        const Vec2 pa = mesh.nodes[e.a], pb = mesh.nodes[e.b];
        const Vec2 t = traction[static_cast<int>(macro.classify_edge(pa, pb))];
        const double half = 0.5 * (pb - pa).norm();
        const int nodes[2] = {e.a, e.b};
        for (int i = 0; i < 2; ++i) {
            const int gx = dofs.dof(nodes[i], 0), gy = dofs.dof(nodes[i], 1);
            if (gx >= 0) rhs[static_cast<std::size_t>(gx)] += half * t.x;
            if (gy >= 0) rhs[static_cast<std::size_t>(gy)] += half * t.y;
        }
    }
}

std::vector<double> cell_problem_rhs(const Mesh& mesh, const DofMap& dofs,
                                     const MaterialSpec& mat, int i, int j) {
    if (i < 0 || i > 1 || j < 0 || j > 1) throw ConfigError("cell problem index out of range");
    std::vector<double> rhs(static_cast<std::size_t>(dofs.n_reduced), 0.0);
    const auto mij = mandel_basis(i, j);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const StrainOp op = strain_op(mesh, t);
        const Mat3 a = mat.mandel_at(mesh.centroid(t));
        const auto stress = a.mul(mij);  // constant prestress A m^ij
        const auto& tr = mesh.triangles[t];
        for (int li = 0; li < 6; ++li) {
            const int gi = dofs.dof(tr[li / 2], li % 2);
            if (gi < 0) continue;
            double v = 0.0;
            for (int r = 0; r < 3; ++r) v += op.b[r][li] * stress[r];
            rhs[static_cast<std::size_t>(gi)] += op.area * v;
        }
    }
    return rhs;
}

}  // namespace perihom
