#pragma once

#include <array>
#include <vector>

#include "perihom/core.hpp"

namespace perihom {

// Maps x into the unit cell Y = [-1/2, 1/2)^2 per coordinate; ties at +1/2
// land on -1/2 so characteristic-function evaluation is deterministic.
Vec2 periodic_wrap(Vec2 x);

enum class InclusionShape { Disk, Square, Empty };

// The reference inclusion T inside the unit cell Y = (-1/2, 1/2)^2.
// Disk: radius r, 0 < r < 1/2. Square: axis-aligned, half-width in (0, 1/2).
// Empty is a degenerate mode used to exercise the no-inclusion identities.
struct CellGeometry {
    InclusionShape shape = InclusionShape::Empty;
    double size = 0.0;  // radius (Disk) or half-width (Square)

    static CellGeometry disk(double radius);
    static CellGeometry square(double half_width);
    static CellGeometry empty();

    bool is_empty() const { return shape == InclusionShape::Empty; }

    double vol_inclusion() const;  // |T|
    double vol_solid() const;      // |Y*| = 1 - |T|
    double perim_inclusion() const;

    // Characteristic function of the closed set T (y already in Y).
    bool inside_inclusion(Vec2 y) const;

    // Negative inside T, zero on dT, positive outside. Exact Euclidean
    // distance for the disk; Chebyshev-gauge distance for the square (exact
    // sign, face-exact magnitude).
    double signed_distance(Vec2 y) const;

    // Closest point on dT (disk: radial; square: nearest face, ties toward
    // the lower axis). Undefined for Empty.
    Vec2 project_to_boundary(Vec2 y) const;

    // Normalized arc-length parameter s in [0,1) of the boundary point
    // nearest to y; used to evaluate boundary densities.
    double arc_parameter(Vec2 y) const;
};

// chi_Theta(x): is x inside the Y-periodic union of inclusions?
bool inside_inclusion_lattice(const CellGeometry& cell, Vec2 x);

enum class MacroEdge { Left, Right, Bottom, Top };

// Axis-aligned macroscopic domain Omega with a clamped part Gamma1 made of
// whole edges; Gamma2 is the rest of the boundary.
struct MacroGeometry {
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    std::array<bool, 4> gamma1 = {true, false, false, false};  // Left,Right,Bottom,Top

    void validate() const;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }

    bool is_gamma1(MacroEdge e) const { return gamma1[static_cast<int>(e)]; }

    // Which domain edge the boundary segment (a,b) lies on; throws if none.
    MacroEdge classify_edge(Vec2 a, Vec2 b) const;
};

// t^eps: the lattice indices k with eps*(k+T) strictly inside Omega.
struct LatticeIndexSet {
    double eps = 0.0;
    std::vector<std::array<int, 2>> cells;

    bool contains(int k1, int k2) const;
};

LatticeIndexSet lattice_cells(const MacroGeometry& macro, const CellGeometry& cell, double eps);

// eps * |dT^eps| computed from exact cell data; converges to |Omega|*|dT|.
double scaled_surface_measure(const LatticeIndexSet& lattice, const CellGeometry& cell);

}  // namespace perihom
