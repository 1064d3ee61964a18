#pragma once

#include <functional>

#include "perihom/dofmap.hpp"
#include "perihom/material.hpp"
#include "perihom/mesh.hpp"
#include "perihom/sparse.hpp"

namespace perihom {

using PointTensor = std::function<Mat3(Vec2)>;
using PointScalar = std::function<double(Vec2)>;
using PointVec = std::function<Vec2(Vec2)>;

// P1 strain operator of one triangle: the Mandel strain of a nodal field is
// B * (u0x,u0y,u1x,u1y,u2x,u2y), constant over the element.
struct StrainOp {
    double area = 0.0;
    std::array<std::array<double, 6>, 3> b{};

    std::array<double, 3> strain(const std::array<Vec2, 3>& u) const;
};

StrainOp strain_op(const Mesh& mesh, int t);

// Elastic stiffness sum_T area * B^T A B with A sampled at element centroids.
void add_elastic(TripletBuffer& buf, const Mesh& mesh, const DofMap& dofs,
                 const PointTensor& tensor_at_centroid);

// Consistent edge mass on the tagged boundary, scaled: scale * int w u.v ds
// (2-point Gauss per edge).
void add_surface_mass(TripletBuffer& buf, const Mesh& mesh, const DofMap& dofs, BoundaryTag tag,
                      const PointScalar& weight_at, double scale);

// scale * int u.v dx (3-point Gauss, exact for P1 x P1).
void add_volume_mass(TripletBuffer& buf, const Mesh& mesh, const DofMap& dofs, double scale);

void add_volume_load(std::vector<double>& rhs, const Mesh& mesh, const DofMap& dofs,
                     const PointVec& f_at);

// Tractions per macro edge, applied on Gamma2 only.
void add_traction_load(std::vector<double>& rhs, const Mesh& mesh, const DofMap& dofs,
                       const MacroGeometry& macro, const std::array<Vec2, 4>& traction);

// Right-hand side of the cell problem for index pair (i, j):
// w -> sum_kh int_{Y*} a_ijkh e_kh(w) dy, i.e. the virtual work of the
// constant prestress A * m^ij.
std::vector<double> cell_problem_rhs(const Mesh& mesh, const DofMap& dofs,
                                     const MaterialSpec& mat, int i, int j);

}  // namespace perihom
