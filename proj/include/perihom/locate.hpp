#pragma once

#include <array>
#include <optional>
#include <vector>

#include "perihom/fields.hpp"
#include "perihom/mesh.hpp"

namespace perihom {

struct LocateHit {
    int triangle = -1;
    std::array<double, 3> bary{};
};

// Uniform-bin point location over a mesh. Ties on shared edges resolve to
// the lowest triangle index, so evaluation is deterministic.
class PointLocator {
  public:
    explicit PointLocator(const Mesh& mesh);

    // Containing triangle with barycentric tolerance 1e-12; nullopt if the
    // point lies outside the mesh.
    std::optional<LocateHit> try_locate(Vec2 p) const;

    // As try_locate but throws InvariantError with the coordinates.
    LocateHit locate(Vec2 p) const;

    // Total evaluation: outside points (e.g. in the sliver between a curved
    // boundary and its polygonal approximation) clamp to the nearest
    // triangle by barycentric projection.
    LocateHit locate_clamped(Vec2 p) const;

    const Mesh& mesh() const { return *mesh_; }

  private:
    std::array<double, 3> barycentric(int t, Vec2 p) const;
    void bin_range(Vec2 lo, Vec2 hi, int& i0, int& i1, int& j0, int& j1) const;

    const Mesh* mesh_;
    double x0_, y0_, dx_, dy_;
    int nx_, ny_;
    std::vector<std::vector<int>> bins_;
};

Vec2 interpolate(const Mesh& mesh, const NodalField& f, const LocateHit& hit);

}  // namespace perihom
