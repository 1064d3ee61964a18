#pragma once

#include <memory>

#include "perihom/fields.hpp"
#include "perihom/linsolve.hpp"
#include "perihom/locate.hpp"
#include "perihom/material.hpp"

namespace perihom {

// The solved cell problems chi^ij on a periodic cell mesh, normalized to
// zero mean over Y*. The (2,1) slot aliases (1,2); only three systems are
// solved. Immutable and shareable after construction.
class CorrectorSet {
  public:
    CorrectorSet(std::shared_ptr<const Mesh> mesh, MaterialSpec mat,
                 std::array<NodalField, 3> chi, std::array<SolveReport, 3> reports);

    const Mesh& mesh() const { return *mesh_; }
    std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
    const MaterialSpec& material() const { return mat_; }
    const SolveReport& report(int i, int j) const { return reports_[slot(i, j)]; }

    // Nodal corrector field for the index pair; (i,j) and (j,i) coincide.
    const NodalField& chi(int i, int j) const { return chi_[slot(i, j)]; }

    // P1 evaluation at y (wrapped into Y first). Throws if the wrapped
    // point lies in the interior of the inclusion.
    Vec2 evaluate(int i, int j, Vec2 y) const;

    // Total variant: interior points evaluate at the nearest boundary
    // point, which extends chi continuously across T for reconstruction.
    Vec2 evaluate_extended(int i, int j, Vec2 y) const;

    // a-energy pairing  a(chi^ij - pi^ij, chi^kh - pi^kh)  over Y*.
    double energy(int i, int j, int k, int h) const;

    static int slot(int i, int j);

  private:
    std::shared_ptr<const Mesh> mesh_;
    MaterialSpec mat_;
    std::array<NodalField, 3> chi_;
    std::array<SolveReport, 3> reports_;
    std::shared_ptr<const PointLocator> locator_;
};

// Solve the three cell problems on a periodic cell mesh to the given CG
// tolerance and normalize to zero Y*-mean.
CorrectorSet solve_correctors(const Mesh& cell_mesh, const MaterialSpec& mat, double tol);
CorrectorSet solve_correctors(std::shared_ptr<const Mesh> cell_mesh, const MaterialSpec& mat,
                              double tol);

}  // namespace perihom
