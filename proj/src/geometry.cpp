#include "perihom/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace perihom {

namespace {
// Strict-containment margin for the closed-set test eps*(k+T) in Omega.
constexpr double kContainMargin = 1e-12;

double wrap1(double t) { return t - std::floor(t + 0.5); }
}  // namespace

Vec2 periodic_wrap(Vec2 x) { return {wrap1(x.x), wrap1(x.y)}; }

CellGeometry CellGeometry::disk(double radius) {
    if (!(radius > 0.0 && radius < 0.5))
        throw ConfigError("disk radius must lie in (0, 1/2), got " + std::to_string(radius));
    return {InclusionShape::Disk, radius};
}

CellGeometry CellGeometry::square(double half_width) {
    if (!(half_width > 0.0 && half_width < 0.5))
        throw ConfigError("square half-width must lie in (0, 1/2), got " +
                          std::to_string(half_width));
    return {InclusionShape::Square, half_width};
}

CellGeometry CellGeometry::empty() { return {InclusionShape::Empty, 0.0}; }

double CellGeometry::vol_inclusion() const {
    switch (shape) {
        case InclusionShape::Disk: return kPi * size * size;
        case InclusionShape::Square: return 4.0 * size * size;
        case InclusionShape::Empty: return 0.0;
    }
    return 0.0;
}

double CellGeometry::vol_solid() const { return 1.0 - vol_inclusion(); }

double CellGeometry::perim_inclusion() const {
    switch (shape) {
        case InclusionShape::Disk: return 2.0 * kPi * size;
        case InclusionShape::Square: return 8.0 * size;
        case InclusionShape::Empty: return 0.0;
    }
    return 0.0;
}

bool CellGeometry::inside_inclusion(Vec2 y) const { return signed_distance(y) <= 0.0; }

double CellGeometry::signed_distance(Vec2 y) const {
    switch (shape) {
        case InclusionShape::Disk: return y.norm() - size;
        case InclusionShape::Square: return std::max(std::abs(y.x), std::abs(y.y)) - size;
        case InclusionShape::Empty: return 1.0;
    }
    return 1.0;
}

Vec2 CellGeometry::project_to_boundary(Vec2 y) const {
    if (shape == InclusionShape::Disk) {
        const double n = y.norm();
        if (n < 1e-14) return {size, 0.0};  // center: pick a fixed direction
        return y * (size / n);
    }
    if (shape == InclusionShape::Square) {
        const double ax = std::abs(y.x), ay = std::abs(y.y);
        Vec2 p = y;
        p.x = std::clamp(p.x, -size, size);
        p.y = std::clamp(p.y, -size, size);
        if (std::max(ax, ay) < size) {
            // Interior point: push to the nearest face, x-faces on ties.
            if (size - ax <= size - ay)
                p.x = (y.x >= 0.0 ? size : -size);
            else
                p.y = (y.y >= 0.0 ? size : -size);
        } else if (ax >= size && ay < size) {
            p.x = (y.x >= 0.0 ? size : -size);
        } else if (ay >= size && ax < size) {
            p.y = (y.y >= 0.0 ? size : -size);
        } else {
            p = {y.x >= 0.0 ? size : -size, y.y >= 0.0 ? size : -size};
        }
        return p;
    }
    throw InvariantError("project_to_boundary: empty inclusion has no boundary");
}

double CellGeometry::arc_parameter(Vec2 y) const {
    if (shape == InclusionShape::Disk) {
        double a = std::atan2(y.y, y.x);
        if (a < 0.0) a += 2.0 * kPi;
        return a / (2.0 * kPi);
    }
    if (shape == InclusionShape::Square) {
        const Vec2 p = project_to_boundary(y);
        const double s = size;
        // Counterclockwise from (s, -s); each face contributes 1/4.
        double t;
        if (p.x >= s - 1e-14 && std::abs(p.y) <= s)
            t = (p.y + s) / (2.0 * s) * 0.25;
        else if (p.y >= s - 1e-14)
            t = 0.25 + (s - p.x) / (2.0 * s) * 0.25;
        else if (p.x <= -s + 1e-14)
            t = 0.5 + (s - p.y) / (2.0 * s) * 0.25;
        else
            t = 0.75 + (p.x + s) / (2.0 * s) * 0.25;
        return std::clamp(t, 0.0, std::nextafter(1.0, 0.0));
    }
    return 0.0;
}

bool inside_inclusion_lattice(const CellGeometry& cell, Vec2 x) {
    if (cell.is_empty()) return false;
    return cell.inside_inclusion(periodic_wrap(x));
}

void MacroGeometry::validate() const {
    if (!(x_max > x_min) || !(y_max > y_min))
        throw ConfigError("macro domain rectangle is degenerate");
    bool any = false;
    for (bool g : gamma1) any = any || g;
    if (!any) throw ConfigError("Gamma1 must contain at least one whole edge");
}

MacroEdge MacroGeometry::classify_edge(Vec2 a, Vec2 b) const {
    const double tol = 1e-12 * std::max(width(), height());
    if (std::abs(a.x - x_min) < tol && std::abs(b.x - x_min) < tol) return MacroEdge::Left;
    if (std::abs(a.x - x_max) < tol && std::abs(b.x - x_max) < tol) return MacroEdge::Right;
    if (std::abs(a.y - y_min) < tol && std::abs(b.y - y_min) < tol) return MacroEdge::Bottom;
    if (std::abs(a.y - y_max) < tol && std::abs(b.y - y_max) < tol) return MacroEdge::Top;
    throw InvariantError("boundary segment does not lie on any domain edge");
}

bool LatticeIndexSet::contains(int k1, int k2) const {
    // cells is ordered by (k2, k1) as produced by lattice_cells.
    const std::array<int, 2> key{k1, k2};
    return std::binary_search(cells.begin(), cells.end(), key,
                              [](const std::array<int, 2>& a, const std::array<int, 2>& b) {
                                  return a[1] < b[1] || (a[1] == b[1] && a[0] < b[0]);
                              });
}

LatticeIndexSet lattice_cells(const MacroGeometry& macro, const CellGeometry& cell, double eps) {
    macro.validate();
    if (!(eps > 0.0 && eps < 1.0))
        throw ConfigError("eps must lie in (0,1), got " + std::to_string(eps));
    if (cell.is_empty()) throw ConfigError("lattice_cells requires a nonempty inclusion");

    // eps*(k+T) is contained in the box [eps*k - eps*s, eps*k + eps*s]^2 and
    // that box is tight for both shapes, so containment reduces to interval
    // checks with a strict margin.
    const double reach = eps * cell.size;
    LatticeIndexSet out;
    out.eps = eps;
    const int k1_lo = static_cast<int>(std::floor(macro.x_min / eps)) - 1;
    const int k1_hi = static_cast<int>(std::ceil(macro.x_max / eps)) + 1;
    const int k2_lo = static_cast<int>(std::floor(macro.y_min / eps)) - 1;
    const int k2_hi = static_cast<int>(std::ceil(macro.y_max / eps)) + 1;
    for (int k2 = k2_lo; k2 <= k2_hi; ++k2) {
        for (int k1 = k1_lo; k1 <= k1_hi; ++k1) {
            const double cx = eps * k1, cy = eps * k2;
            if (cx - reach > macro.x_min + kContainMargin &&
                cx + reach < macro.x_max - kContainMargin &&
                cy - reach > macro.y_min + kContainMargin &&
                cy + reach < macro.y_max - kContainMargin) {
                out.cells.push_back({k1, k2});
            }
        }
    }
    return out;
}

double scaled_surface_measure(const LatticeIndexSet& lattice, const CellGeometry& cell) {
    const double count = static_cast<double>(lattice.cells.size());
    return lattice.eps * lattice.eps * count * cell.perim_inclusion();
}

}  // namespace perihom
