#include "perihom/corrector.hpp"

#include <cmath>

#include "perihom/assembly.hpp"

namespace perihom {

int CorrectorSet::slot(int i, int j) {
    if (i == 0 && j == 0) return 0;
    if (i == 1 && j == 1) return 1;
    if ((i == 0 && j == 1) || (i == 1 && j == 0)) return 2;
    throw ConfigError("corrector index pair out of range");
}

CorrectorSet::CorrectorSet(std::shared_ptr<const Mesh> mesh, MaterialSpec mat,
                           std::array<NodalField, 3> chi, std::array<SolveReport, 3> reports)
    : mesh_(std::move(mesh)),
      mat_(std::move(mat)),
      chi_(std::move(chi)),
      reports_(reports),
      locator_(std::make_shared<PointLocator>(*mesh_)) {}

Vec2 CorrectorSet::evaluate(int i, int j, Vec2 y) const {
    const Vec2 w = periodic_wrap(y);
    if (!mesh_->cell.is_empty() && mesh_->cell.signed_distance(w) < -1e-12)
        throw ConfigError("corrector evaluation inside the inclusion at wrapped point (" +
                          std::to_string(w.x) + ", " + std::to_string(w.y) + ")");
    return interpolate(*mesh_, chi_[slot(i, j)], locator_->locate_clamped(w));
}

Vec2 CorrectorSet::evaluate_extended(int i, int j, Vec2 y) const {
    Vec2 w = periodic_wrap(y);
    if (!mesh_->cell.is_empty() && mesh_->cell.signed_distance(w) < 0.0)
        w = mesh_->cell.project_to_boundary(w);
    return interpolate(*mesh_, chi_[slot(i, j)], locator_->locate_clamped(w));
}

double CorrectorSet::energy(int i, int j, int k, int h) const {
    const auto mij = mandel_basis(i, j);
    const auto mkh = mandel_basis(k, h);
    const NodalField& cij = chi_[slot(i, j)];
    const NodalField& ckh = chi_[slot(k, h)];
    double q = 0.0;
    for (int t = 0; t < mesh_->triangle_count(); ++t) {
        const StrainOp op = strain_op(*mesh_, t);
        const Mat3 a = mat_.mandel_at(mesh_->centroid(t));
        const auto& tr = mesh_->triangles[t];
        auto d1 = op.strain({cij.values[tr[0]], cij.values[tr[1]], cij.values[tr[2]]});
        auto d2 = op.strain({ckh.values[tr[0]], ckh.values[tr[1]], ckh.values[tr[2]]});
        for (int r = 0; r < 3; ++r) {
            d1[r] -= mij[r];
            d2[r] -= mkh[r];
        }
        const auto ad2 = a.mul(d2);
        q += op.area * (d1[0] * ad2[0] + d1[1] * ad2[1] + d1[2] * ad2[2]);
    }
    return q;
}

CorrectorSet solve_correctors(std::shared_ptr<const Mesh> cell_mesh, const MaterialSpec& mat,
                              double tol) {
    const Mesh& mesh = *cell_mesh;
    if (mesh.kind != MeshKind::Cell)
        throw ConfigError("solve_correctors requires a periodic cell mesh");
    mat.validate();

    DofMapOptions opt;
    opt.fold_periodic = true;
    opt.pin_interior = true;
    const DofMap dofs = make_dof_map(mesh, opt);

    TripletBuffer buf(dofs.n_reduced);
    add_elastic(buf, mesh, dofs, [&](Vec2 y) { return mat.mandel_at(y); });
    const SparseSymMatrix K = buf.build();

    std::array<NodalField, 3> chi;
    std::array<SolveReport, 3> reports;
    const std::array<std::pair<int, int>, 3> pairs = {{{0, 0}, {1, 1}, {0, 1}}};
    for (int s = 0; s < 3; ++s) {
        const auto [i, j] = pairs[s];
        const auto rhs = cell_problem_rhs(mesh, dofs, mat, i, j);
        CgResult res = cg_solve(K, rhs, tol);
        if (!res.report.converged)
            throw SolverError("cell problem (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ") did not converge: residual " +
                              std::to_string(res.report.relative_residual));
        NodalField f = expand_solution(dofs, res.x);
        // Fix the strain-free ambiguity: shift to zero mean over Y*.
        const Vec2 mean = field_mean(mesh, f);
        for (auto& v : f.values) v -= mean;
        chi[s] = std::move(f);
        reports[s] = res.report;
    }
    return CorrectorSet(std::move(cell_mesh), mat, std::move(chi), reports);
}

CorrectorSet solve_correctors(const Mesh& cell_mesh, const MaterialSpec& mat, double tol) {
    return solve_correctors(std::make_shared<Mesh>(cell_mesh), mat, tol);
}

}  // namespace perihom
