#pragma once

#include <memory>

#include "perihom/effective.hpp"

namespace perihom {

// Discrete solution of the fine-scale problem on the perforated domain:
// oscillating coefficients a(x/eps), Robin surface term eps*theta(x/eps) on
// the hole boundaries, clamped Gamma1, tractions on Gamma2.
struct FineSolution {
    std::shared_ptr<const Mesh> mesh;
    double eps = 0.0;
    NodalField u;
    int dofs = 0;
    double energy_norm = 0.0;  // sqrt of the a^eps-form value at u
    double h1_norm = 0.0;      // full H1(Omega^eps) norm
    double surface_l2 = 0.0;   // eps * int_{dT^eps} |u|^2 ds
    SolveReport report;
};

FineSolution solve_fine(std::shared_ptr<const Mesh> perforated_mesh, const MaterialSpec& mat,
                        const LoadSpec& load, double tol, bool oscillating_f = false);
FineSolution solve_fine(const Mesh& perforated_mesh, const MaterialSpec& mat,
                        const LoadSpec& load, double tol, bool oscillating_f = false);

// A priori quantities of any field on a perforated mesh: the H1 norm over
// Omega^eps and the eps-scaled squared surface trace on the hole edges.
std::pair<double, double> apriori_quantities(const Mesh& mesh, const NodalField& u, double eps);

}  // namespace perihom
