#pragma once

#include <vector>

#include "perihom/dofmap.hpp"
#include "perihom/material.hpp"
#include "perihom/mesh.hpp"

namespace perihom {

// Piecewise-linear vector field given by nodal values on a mesh.
struct NodalField {
    std::vector<Vec2> values;

    static NodalField zero(const Mesh& mesh) {
        NodalField f;
        f.values.assign(mesh.nodes.size(), Vec2{});
        return f;
    }
    static NodalField constant(const Mesh& mesh, Vec2 v) {
        NodalField f;
        f.values.assign(mesh.nodes.size(), v);
        return f;
    }
};

// Reduced solution vector -> nodal field (slaves copy masters, eliminated
// dofs are zero).
NodalField expand_solution(const DofMap& dofs, const std::vector<double>& reduced);

// Nodal field -> reduced vector (masters only); used by tests and energy
// identities.
std::vector<double> restrict_field(const DofMap& dofs, const NodalField& f);

NodalField field_difference(const NodalField& a, const NodalField& b);

// Exact quadrature for P1 fields.
double l2_norm(const Mesh& mesh, const NodalField& f);
double h1_seminorm(const Mesh& mesh, const NodalField& f);
Vec2 field_mean(const Mesh& mesh, const NodalField& f);  // (1/|mesh|) int f dx

Sym2 element_strain(const Mesh& mesh, int t, const NodalField& f);

}  // namespace perihom
