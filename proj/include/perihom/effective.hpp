#pragma once

#include "perihom/corrector.hpp"

namespace perihom {

// Direct formula: q_ijkh = int_{Y*} a_ijkh - sum_pq int_{Y*} a_pqkh e_pq(chi^ij),
// assembled entry by entry without symmetrization.
Mat3 q_direct(const CorrectorSet& set);

// Energy formula: q_ijkh = a(chi^ij - pi^ij, chi^kh - pi^kh); exactly
// symmetric by construction.
Mat3 q_energy(const CorrectorSet& set);

// int_{Y*} a dy in Mandel form; the Voigt upper bound for q.
Mat3 voigt_tensor(const CorrectorSet& set);

// theta_tilde = int_{dT} theta ds (2-point Gauss on HOLE edges) and
// f_tilde = int_{Y*} f dy (3-point Gauss over the cell mesh).
std::pair<double, Vec2> cell_averages(const Mesh& cell_mesh, const MaterialSpec& mat,
                                      const LoadSpec& load);

// Homogenized coefficients with their structural checks. Construction
// cross-checks the two q formulas (abort beyond 1e-6 relative mismatch),
// verifies q_ijkh = q_khij, positive semidefiniteness, and the theta bound.
struct EffectiveModel {
    Mat3 q_mandel;  // from the energy formula
    double theta_tilde = 0.0;
    Vec2 f_tilde{};

    // q_ijkh from the Mandel matrix (indices in {0,1}).
    double q(int i, int j, int k, int h) const;

    Sym2 hooke(const Sym2& strain) const;  // sigma0 = q : e

    static EffectiveModel build(const CorrectorSet& set, const LoadSpec& load);

    // Structural invariants; throws InvariantError. discrete_perimeter is
    // the hole-edge length sum used to bound theta_tilde from below.
    void check(double alpha0, double discrete_perimeter) const;
};

}  // namespace perihom
