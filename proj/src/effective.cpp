#include "perihom/effective.hpp"

#include <cmath>

#include "perihom/assembly.hpp"

namespace perihom {

namespace {
const std::array<std::pair<int, int>, 3> kMandelPairs = {{{0, 0}, {1, 1}, {0, 1}}};

// 2-point Gauss positions on [0,1].
const double kGaussA = 0.5 - 0.5 / std::sqrt(3.0);
const double kGaussB = 0.5 + 0.5 / std::sqrt(3.0);
}  // namespace

Mat3 q_direct(const CorrectorSet& set) {
    const Mesh& mesh = set.mesh();
    const MaterialSpec& mat = set.material();
    Mat3 q;
    for (int a = 0; a < 3; ++a) {
        const auto [i, j] = kMandelPairs[a];
        const auto mij = mandel_basis(i, j);
        const NodalField& chi = set.chi(i, j);
        for (int b = 0; b < 3; ++b) {
            const auto [k, h] = kMandelPairs[b];
            const auto mkh = mandel_basis(k, h);
            double v = 0.0;
            for (int t = 0; t < mesh.triangle_count(); ++t) {
                const StrainOp op = strain_op(mesh, t);
                const Mat3 am = mat.mandel_at(mesh.centroid(t));
                const auto& tr = mesh.triangles[t];
                const auto e_chi =
                    op.strain({chi.values[tr[0]], chi.values[tr[1]], chi.values[tr[2]]});
                // a_ijkh - sum_pq a_pqkh e_pq(chi^ij), all in Mandel form.
                const auto a_mkh = am.mul(mkh);
                double cell = 0.0;
                for (int r = 0; r < 3; ++r) cell += (mij[r] - e_chi[r]) * a_mkh[r];
                v += op.area * cell;
            }
            // Scale from tensor entry to Mandel slot.
            const double fa = (a == 2) ? std::sqrt(2.0) : 1.0;
            const double fb = (b == 2) ? std::sqrt(2.0) : 1.0;
            q(a, b) = v * fa * fb;
        }
    }
    return q;
}

Mat3 q_energy(const CorrectorSet& set) {
    Mat3 q;
    for (int a = 0; a < 3; ++a) {
        for (int b = a; b < 3; ++b) {
            const auto [i, j] = kMandelPairs[a];
            const auto [k, h] = kMandelPairs[b];
            const double fa = (a == 2) ? std::sqrt(2.0) : 1.0;
            const double fb = (b == 2) ? std::sqrt(2.0) : 1.0;
            const double v = set.energy(i, j, k, h) * fa * fb;
            q(a, b) = v;
            q(b, a) = v;
        }
    }
    return q;
}

Mat3 voigt_tensor(const CorrectorSet& set) {
    const Mesh& mesh = set.mesh();
    Mat3 s;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const Mat3 a = set.material().mandel_at(mesh.centroid(t));
        const double area = mesh.triangle_area(t);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) s(r, c) += area * a(r, c);
    }
    return s;
}

std::pair<double, Vec2> cell_averages(const Mesh& cell_mesh, const MaterialSpec& mat,
                                      const LoadSpec& load) {
    double theta_tilde = 0.0;
    for (const auto& e : cell_mesh.boundary_edges) {
        if (e.tag != BoundaryTag::Hole) continue;
        const Vec2 pa = cell_mesh.nodes[e.a], pb = cell_mesh.nodes[e.b];
        const double len = (pb - pa).norm();
        for (double g : {kGaussA, kGaussB})
            theta_tilde += 0.5 * len * mat.theta_at(cell_mesh.cell, pa + (pb - pa) * g);
    }

    Vec2 f_tilde{};
    for (int t = 0; t < cell_mesh.triangle_count(); ++t) {
        const auto& tr = cell_mesh.triangles[t];
        const Vec2 p0 = cell_mesh.nodes[tr[0]], p1 = cell_mesh.nodes[tr[1]],
                   p2 = cell_mesh.nodes[tr[2]];
        const double w = cell_mesh.triangle_area(t) / 3.0;
        f_tilde += (load.f_at((p0 + p1) * 0.5) + load.f_at((p1 + p2) * 0.5) +
                    load.f_at((p2 + p0) * 0.5)) *
                   w;
    }
    return {theta_tilde, f_tilde};
}

double EffectiveModel::q(int i, int j, int k, int h) const {
    auto slot = [](int a, int b) -> std::pair<int, double> {
        if (a == 0 && b == 0) return {0, 1.0};
        if (a == 1 && b == 1) return {1, 1.0};
        return {2, 1.0 / std::sqrt(2.0)};
    };
    const auto [ra, fa] = slot(i, j);
    const auto [rb, fb] = slot(k, h);
    return q_mandel(ra, rb) * fa * fb;
}

Sym2 EffectiveModel::hooke(const Sym2& strain) const {
    return Sym2::from_mandel(q_mandel.mul(strain.mandel()));
}

void EffectiveModel::check(double alpha0, double discrete_perimeter) const {
    const double scale = q_mandel.max_abs();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (std::abs(q_mandel(a, b) - q_mandel(b, a)) > 1e-10 * scale)
                throw InvariantError("effective tensor violates q_ijkh = q_khij");
    const auto ev = q_mandel.eigenvalues();
    if (ev[0] < -1e-9 * std::max(ev[2], 0.0))
        throw InvariantError("effective tensor is not positive semidefinite (min eigenvalue " +
                             std::to_string(ev[0]) + ")");
    if (theta_tilde < alpha0 * discrete_perimeter - 1e-12)
        throw InvariantError("theta_tilde falls below alpha0 * |dT|");
}

EffectiveModel EffectiveModel::build(const CorrectorSet& set, const LoadSpec& load) {
    const Mat3 qd = q_direct(set);
    const Mat3 qe = q_energy(set);
    const double scale = std::max(qd.max_abs(), qe.max_abs());
    const double mismatch = (qd - qe).max_abs();
    if (mismatch > 1e-6 * scale)
        throw InvariantError(
            "direct and energy forms of the effective tensor disagree: relative mismatch " +
            std::to_string(mismatch / scale));

    EffectiveModel m;
    m.q_mandel = qe;
    const auto [tt, ft] = cell_averages(set.mesh(), set.material(), load);
    m.theta_tilde = tt;
    m.f_tilde = ft;
    m.check(set.material().alpha0, set.mesh().boundary_length(BoundaryTag::Hole));
    return m;
}

}  // namespace perihom
