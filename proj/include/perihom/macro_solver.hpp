#pragma once

#include <memory>

#include "perihom/effective.hpp"

namespace perihom {

// Discrete solution of the homogenized problem on the unperforated domain:
// stiffness from q, volume mass scaled by theta_tilde, loads f_tilde and t,
// u0 = 0 on Gamma1 (the traction condition on Gamma2 is natural).
struct MacroSolution {
    std::shared_ptr<const Mesh> mesh;
    NodalField u0;
    std::vector<Sym2> strain;  // per triangle, exact P1 derivative
    double compliance = 0.0;   // l(u0)
    SolveReport report;
};

MacroSolution solve_homogenized(const EffectiveModel& model, std::shared_ptr<const Mesh> mesh,
                                const LoadSpec& load, double tol);
MacroSolution solve_homogenized(const EffectiveModel& model, const Mesh& mesh,
                                const LoadSpec& load, double tol);

// l(u) = int f_tilde . u + int_{Gamma2} t . u for any field on the mesh.
double compliance_value(const EffectiveModel& model, const Mesh& mesh, const NodalField& u,
                        const LoadSpec& load);

}  // namespace perihom
