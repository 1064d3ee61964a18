#pragma once

#include <array>
#include <vector>

#include "perihom/geometry.hpp"

namespace perihom {

enum class BoundaryTag { Gamma1, Gamma2, Hole, PeriodicX, PeriodicY };

enum class PeriodicAxis { X, Y };

struct BoundaryEdge {
    int a = -1;
    int b = -1;  // oriented so the adjacent triangle lies to the left
    BoundaryTag tag = BoundaryTag::Hole;
};

struct PeriodicPair {
    int master = -1;  // node on the negative face
    int slave = -1;   // node on the positive face
    PeriodicAxis axis = PeriodicAxis::X;
};

enum class MeshKind { Cell, Macro, Plain };

// Conforming triangle mesh of either the perforated unit cell Y\T (Cell),
// the perforated macro domain Omega\T^eps (Macro), or plain Omega (Plain).
// Triangles are counterclockwise; meshes are immutable once generated.
struct Mesh {
    MeshKind kind = MeshKind::Plain;
    CellGeometry cell = CellGeometry::empty();
    MacroGeometry macro;
    double eps = 0.0;  // Macro only
    double h = 0.0;    // nominal element size

    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<PeriodicPair> periodic_pairs;  // Cell meshes only

    int node_count() const { return static_cast<int>(nodes.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }

    double triangle_area(int t) const;
    Vec2 centroid(int t) const;
    double total_area() const;

    double boundary_length(BoundaryTag tag) const;
    int boundary_count(BoundaryTag tag) const;

    // Closed loops of HOLE edges as cyclic node sequences.
    std::vector<std::vector<int>> hole_loops() const;

    std::vector<bool> nodes_on_tag(BoundaryTag tag) const;
    // True for nodes on any boundary edge (of any tag).
    std::vector<bool> boundary_node_mask() const;

    // Checks orientation, edge manifoldness, periodic pairing, hole loop
    // closure and node placement; throws InvariantError on violation.
    void validate() const;
};

// Mesh of Y\T with complete periodic node pairing on the outer faces.
// Preconditions: h > 0; for Disk, h < (1/2 - r)/2; for Square, the half
// width must align with the grid (half_width an integer multiple of the
// effective spacing), which keeps the inclusion boundary exact.
// symmetric_pattern selects a 4-triangles-per-square split that is invariant
// under the coordinate swap (y1,y2) -> (y2,y1).
Mesh generate_cell_mesh(const CellGeometry& cell, double h, bool symmetric_pattern = false);

// Mesh of Omega\T^eps with one hole per lattice cell; Gamma1/Gamma2 tagged
// per MacroGeometry. Requires h <= eps/8 (>= 16 segments per hole).
Mesh generate_macro_mesh(const MacroGeometry& macro, const CellGeometry& cell, double eps,
                         double h);

// Structured mesh of Omega without holes (used by the homogenized solve).
Mesh generate_plain_mesh(const MacroGeometry& macro, double h);

// Uniform 1->4 refinement; midpoints of HOLE edges are projected onto the
// true inclusion boundary, periodic pairs are regenerated.
Mesh refine(const Mesh& mesh);

}  // namespace perihom
