#include "perihom/locate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace perihom {

namespace {
constexpr double kBaryTol = 1e-12;
}

PointLocator::PointLocator(const Mesh& mesh) : mesh_(&mesh) {
    double x1 = -1e300, y1 = -1e300;
    x0_ = 1e300;
    y0_ = 1e300;
    for (const auto& n : mesh.nodes) {
        x0_ = std::min(x0_, n.x);
        y0_ = std::min(y0_, n.y);
        x1 = std::max(x1, n.x);
        y1 = std::max(y1, n.y);
    }
    const int target = std::max(1, static_cast<int>(std::sqrt(mesh.triangle_count() / 2.0)));
    nx_ = ny_ = target;
    dx_ = (x1 - x0_) / nx_;
    dy_ = (y1 - y0_) / ny_;
    if (dx_ <= 0.0) dx_ = 1.0;
    if (dy_ <= 0.0) dy_ = 1.0;
    bins_.assign(static_cast<std::size_t>(nx_) * ny_, {});
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tr = mesh.triangles[t];
        Vec2 lo = mesh.nodes[tr[0]], hi = lo;
        for (int k = 1; k < 3; ++k) {
            const Vec2 p = mesh.nodes[tr[k]];
            lo.x = std::min(lo.x, p.x);
            lo.y = std::min(lo.y, p.y);
            hi.x = std::max(hi.x, p.x);
            hi.y = std::max(hi.y, p.y);
        }
        int i0, i1, j0, j1;
        bin_range(lo, hi, i0, i1, j0, j1);
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i)
                bins_[static_cast<std::size_t>(j) * nx_ + i].push_back(t);
    }
}

void PointLocator::bin_range(Vec2 lo, Vec2 hi, int& i0, int& i1, int& j0, int& j1) const {
    i0 = std::clamp(static_cast<int>((lo.x - x0_) / dx_), 0, nx_ - 1);
    i1 = std::clamp(static_cast<int>((hi.x - x0_) / dx_), 0, nx_ - 1);
    j0 = std::clamp(static_cast<int>((lo.y - y0_) / dy_), 0, ny_ - 1);
    j1 = std::clamp(static_cast<int>((hi.y - y0_) / dy_), 0, ny_ - 1);
}

std::array<double, 3> PointLocator::barycentric(int t, Vec2 p) const {
    const auto& tr = mesh_->triangles[t];
    const Vec2 a = mesh_->nodes[tr[0]], b = mesh_->nodes[tr[1]], c = mesh_->nodes[tr[2]];
    const double area2 = cross(b - a, c - a);
    return {cross(b - p, c - p) / area2, cross(c - p, a - p) / area2, cross(a - p, b - p) / area2};
}

std::optional<LocateHit> PointLocator::try_locate(Vec2 p) const {
    int i0, i1, j0, j1;
    bin_range(p, p, i0, i1, j0, j1);
    int best = -1;
    std::array<double, 3> best_bc{};
    for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
            for (int t : bins_[static_cast<std::size_t>(j) * nx_ + i]) {
                const auto bc = barycentric(t, p);
                if (bc[0] >= -kBaryTol && bc[1] >= -kBaryTol && bc[2] >= -kBaryTol) {
                    if (best < 0 || t < best) {
                        best = t;
                        best_bc = bc;
                    }
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return LocateHit{best, best_bc};
}

LocateHit PointLocator::locate(Vec2 p) const {
    auto hit = try_locate(p);
    if (!hit)
        throw InvariantError("point location failed at (" + std::to_string(p.x) + ", " +
                             std::to_string(p.y) + ")");
    return *hit;
}

LocateHit PointLocator::locate_clamped(Vec2 p) const {
    if (auto hit = try_locate(p)) return *hit;
    // The point sits outside the mesh; search a growing bin neighborhood for
    // the triangle with the least barycentric violation, then clamp.
    int ci, cj, unused1, unused2;
    bin_range(p, p, ci, unused1, cj, unused2);
    int best = -1;
    double best_violation = 1e300;
    std::array<double, 3> best_bc{};
    for (int ring = 1; ring <= std::max(nx_, ny_); ++ring) {
        const int i0 = std::max(0, ci - ring), i1 = std::min(nx_ - 1, ci + ring);
        const int j0 = std::max(0, cj - ring), j1 = std::min(ny_ - 1, cj + ring);
        for (int j = j0; j <= j1; ++j) {
            for (int i = i0; i <= i1; ++i) {
                for (int t : bins_[static_cast<std::size_t>(j) * nx_ + i]) {
                    const auto bc = barycentric(t, p);
                    const double violation = -std::min({bc[0], bc[1], bc[2]});
                    if (violation < best_violation - 1e-15 ||
                        (std::abs(violation - best_violation) <= 1e-15 && t < best)) {
                        best_violation = violation;
                        best = t;
                        best_bc = bc;
                    }
                }
            }
        }
        if (best >= 0 && best_violation < 0.5 * ring) break;
    }
    if (best < 0)
        throw InvariantError("clamped point location failed at (" + std::to_string(p.x) + ", " +
                             std::to_string(p.y) + ")");
    LocateHit hit{best, best_bc};
    for (double& b : hit.bary) b = std::max(b, 0.0);
    const double sum = hit.bary[0] + hit.bary[1] + hit.bary[2];
    for (double& b : hit.bary) b /= sum;
    return hit;
}

Vec2 interpolate(const Mesh& mesh, const NodalField& f, const LocateHit& hit) {
    const auto& tr = mesh.triangles[hit.triangle];
    Vec2 v{};
    for (int k = 0; k < 3; ++k) v += f.values[tr[k]] * hit.bary[k];
    return v;
}

}  // namespace perihom
