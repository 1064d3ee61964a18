#include "perihom/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace perihom {

namespace {

constexpr double kSnapFraction = 0.25;   // nodes closer than this * h snap onto dT
constexpr double kFaceTol = 1e-9;        // coordinate tolerance for face membership
constexpr int kMinHoleSegments = 16;

struct EdgeKey {
    int a, b;
    EdgeKey(int u, int v) : a(std::min(u, v)), b(std::max(u, v)) {}
    bool operator<(const EdgeKey& o) const { return a < o.a || (a == o.a && b < o.b); }
    bool operator==(const EdgeKey& o) const { return a == o.a && b == o.b; }
};

// Signed distance to the nearest inclusion plus the projector onto its
// boundary; for cell meshes there is a single inclusion at the origin, for
// macro meshes one per lattice cell, scaled by eps.
struct Carver {
    const CellGeometry* cell = nullptr;
    const LatticeIndexSet* lattice = nullptr;  // null for cell meshes
    double scale = 1.0;                        // eps for macro meshes

    std::optional<std::array<int, 2>> nearest_cell(Vec2 x) const {
        const int k1 = static_cast<int>(std::llround(x.x / scale));
        const int k2 = static_cast<int>(std::llround(x.y / scale));
        if (lattice->contains(k1, k2)) return std::array<int, 2>{k1, k2};
        return std::nullopt;
    }

    double phi(Vec2 x) const {
        if (!lattice) return cell->signed_distance(x);
        auto k = nearest_cell(x);
        if (!k) return scale;  // far from every carved inclusion
        const Vec2 local = (x - Vec2(scale * (*k)[0], scale * (*k)[1])) / scale;
        return scale * cell->signed_distance(local);
    }

    Vec2 project(Vec2 x) const {
        if (!lattice) return cell->project_to_boundary(x);
        auto k = nearest_cell(x);
        if (!k) throw InvariantError("project: point is not near any carved inclusion");
        const Vec2 c(scale * (*k)[0], scale * (*k)[1]);
        return c + cell->project_to_boundary((x - c) / scale) * scale;
    }
};

Vec2 cut_point(const Carver& cv, Vec2 a, Vec2 b, double pa, double pb) {
    // Bisection on the signed distance, then an exact projection so the new
    // node lies on the analytic boundary to machine precision.
    if (pa > 0.0) {
        std::swap(a, b);
        std::swap(pa, pb);
    }
    Vec2 lo = a, hi = b;
    for (int it = 0; it < 60; ++it) {
        const Vec2 mid = (lo + hi) * 0.5;
        if (cv.phi(mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return cv.project((lo + hi) * 0.5);
}

struct Builder {
    std::vector<Vec2> nodes;
    std::vector<bool> locked;  // outer-boundary nodes, never moved
    std::vector<std::array<int, 3>> tris;
    double grid_h = 0.0;

    void add_grid(double x0, double x1, double y0, double y1, int nx, int ny, bool symmetric) {
        const double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
        grid_h = std::max(hx, hy);
        auto id = [&](int i, int j) { return j * (nx + 1) + i; };
        for (int j = 0; j <= ny; ++j) {
            for (int i = 0; i <= nx; ++i) {
                // Endpoints exact so face classification never flaps.
                const double x = (i == nx) ? x1 : x0 + i * hx;
                const double y = (j == ny) ? y1 : y0 + j * hy;
                nodes.push_back({x, y});
                locked.push_back(i == 0 || i == nx || j == 0 || j == ny);
            }
        }
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const int v00 = id(i, j), v10 = id(i + 1, j);
                const int v01 = id(i, j + 1), v11 = id(i + 1, j + 1);
                if (!symmetric) {
                    tris.push_back({v00, v10, v11});
                    tris.push_back({v00, v11, v01});
                } else {
                    const Vec2 c = (nodes[v00] + nodes[v11]) * 0.5;
                    nodes.push_back(c);
                    locked.push_back(false);
                    const int vc = static_cast<int>(nodes.size()) - 1;
                    tris.push_back({v00, v10, vc});
                    tris.push_back({v10, v11, vc});
                    tris.push_back({v11, v01, vc});
                    tris.push_back({v01, v00, vc});
                }
            }
        }
    }

    void carve(const Carver& cv) {
        std::vector<double> phi(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) phi[i] = cv.phi(nodes[i]);

        // Snap near-boundary nodes onto dT; outer-boundary nodes stay put.
        const double snap = kSnapFraction * grid_h;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (locked[i] || std::abs(phi[i]) >= snap) continue;
            if (phi[i] == 0.0) continue;
            nodes[i] = cv.project(nodes[i]);
            phi[i] = 0.0;
        }

        std::map<EdgeKey, int> cut_nodes;
        auto cut = [&](int u, int v) {
            const EdgeKey key(u, v);
            auto it = cut_nodes.find(key);
            if (it != cut_nodes.end()) return it->second;
            nodes.push_back(cut_point(cv, nodes[u], nodes[v], phi[u], phi[v]));
            locked.push_back(false);
            const int id = static_cast<int>(nodes.size()) - 1;
            cut_nodes.emplace(key, id);
            return id;
        };

        std::vector<std::array<int, 3>> kept;
        kept.reserve(tris.size());
        for (const auto& t : tris) {
            std::array<double, 3> p = {phi[t[0]], phi[t[1]], phi[t[2]]};
            int neg = 0, pos = 0;
            for (double v : p) {
                if (v < 0.0) ++neg;
                if (v > 0.0) ++pos;
            }
            if (neg == 0 && pos > 0) {
                kept.push_back(t);
                continue;
            }
            if (pos == 0) continue;  // fully inside the (convex) inclusion

            // Mixed triangle: rotate so the pattern is canonical, then keep
            // the outside part with cut points on the analytic boundary.
            std::array<int, 3> v = t;
            std::array<double, 3> q = p;
            auto rotate = [&]() {
                v = {v[1], v[2], v[0]};
                q = {q[1], q[2], q[0]};
            };
            if (neg == 1 && pos == 2) {
                while (!(q[0] < 0.0)) rotate();
                const int qa = cut(v[0], v[1]), qb = cut(v[0], v[2]);
                kept.push_back({v[1], v[2], qb});
                kept.push_back({v[1], qb, qa});
            } else if (neg == 2 && pos == 1) {
                while (!(q[0] > 0.0)) rotate();
                const int qa = cut(v[0], v[1]), qb = cut(v[2], v[0]);
                kept.push_back({v[0], qa, qb});
            } else {
                // One negative, one positive, one on the boundary.
                while (!(q[0] == 0.0)) rotate();
                const int qm = cut(v[1], v[2]);
                if (q[1] < 0.0)
                    kept.push_back({v[0], qm, v[2]});
                else
                    kept.push_back({v[0], v[1], qm});
            }
        }
        tris = std::move(kept);
        compact();
    }

    void compact() {
        std::vector<int> remap(nodes.size(), -1);
        std::vector<Vec2> new_nodes;
        std::vector<bool> new_locked;
        for (auto& t : tris) {
            for (int& v : t) {
                if (remap[v] < 0) {
                    remap[v] = static_cast<int>(new_nodes.size());
                    new_nodes.push_back(nodes[v]);
                    new_locked.push_back(locked[v]);
                }
                v = remap[v];
            }
        }
        nodes = std::move(new_nodes);
        locked = std::move(new_locked);
    }

    // Local Delaunay edge flips to restore quality after snapping and cuts.
    // Adjacency is kept incrementally; a work queue revisits the edges of
    // flipped quads until no flip applies.
    void delaunay_flips() {
        std::map<EdgeKey, std::array<int, 2>> e2t;
        auto attach = [&](const EdgeKey& k, int t) {
            auto& slot = e2t.try_emplace(k, std::array<int, 2>{-1, -1}).first->second;
            if (slot[0] < 0)
                slot[0] = t;
            else
                slot[1] = t;
        };
        auto detach = [&](const EdgeKey& k, int t) {
            auto& slot = e2t.at(k);
            if (slot[0] == t) {
                slot[0] = slot[1];
                slot[1] = -1;
            } else if (slot[1] == t) {
                slot[1] = -1;
            }
        };
        for (int t = 0; t < static_cast<int>(tris.size()); ++t)
            for (int e = 0; e < 3; ++e) attach(EdgeKey(tris[t][e], tris[t][(e + 1) % 3]), t);

        std::vector<EdgeKey> queue;
        for (const auto& [k, ts] : e2t)
            if (ts[1] >= 0) queue.push_back(k);

        const double floor_area = 1e-12 * grid_h * grid_h;
        long flips = 0;
        const long max_flips = 10L * static_cast<long>(tris.size()) + 100;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const EdgeKey key = queue[qi];
            const auto it = e2t.find(key);
            if (it == e2t.end() || it->second[1] < 0) continue;
            const int t0 = it->second[0], t1 = it->second[1];

            // Orient: u->v is the directed edge as t0 walks it.
            int u = -1, v = -1, c = -1;
            for (int e = 0; e < 3; ++e) {
                const int p = tris[t0][e], q = tris[t0][(e + 1) % 3];
                if (EdgeKey(p, q) == key) {
                    u = p;
                    v = q;
                    c = tris[t0][(e + 2) % 3];
                }
            }
            int d = -1;
            for (int e = 0; e < 3; ++e)
                if (tris[t1][e] != u && tris[t1][e] != v) d = tris[t1][e];
            if (u < 0 || d < 0 || c == d) continue;

            const Vec2 U = nodes[u], V = nodes[v], C = nodes[c], D = nodes[d];
            auto angle_at = [&](Vec2 p) {
                const Vec2 a = U - p, b = V - p;
                return std::atan2(std::abs(cross(a, b)), a.dot(b));
            };
            if (angle_at(C) + angle_at(D) <= kPi + 1e-12) continue;
            if (signed_area(C, U, D) <= floor_area || signed_area(D, V, C) <= floor_area)
                continue;  // quad not strictly convex

            detach(key, t0);
            detach(key, t1);
            detach(EdgeKey(v, c), t0);
            detach(EdgeKey(u, d), t1);
            tris[t0] = {c, u, d};
            tris[t1] = {d, v, c};
            attach(EdgeKey(c, d), t0);
            attach(EdgeKey(c, d), t1);
            attach(EdgeKey(v, c), t1);
            attach(EdgeKey(u, d), t0);
            for (const EdgeKey& nk :
                 {EdgeKey(u, c), EdgeKey(v, c), EdgeKey(u, d), EdgeKey(v, d)})
                queue.push_back(nk);
            if (++flips > max_flips) break;
        }
    }
};

std::vector<BoundaryEdge> extract_boundary(const Mesh& m,
                                           const std::function<BoundaryTag(Vec2, Vec2)>& tag_of) {
    std::map<EdgeKey, int> count;
    std::map<EdgeKey, std::pair<int, int>> oriented;
    for (const auto& t : m.triangles) {
        for (int e = 0; e < 3; ++e) {
            const int u = t[e], v = t[(e + 1) % 3];
            count[EdgeKey(u, v)] += 1;
            oriented[EdgeKey(u, v)] = {u, v};
        }
    }
    std::vector<BoundaryEdge> out;
    for (const auto& [key, c] : count) {
        if (c == 1) {
            const auto [u, v] = oriented[key];
            out.push_back({u, v, tag_of(m.nodes[u], m.nodes[v])});
        } else if (c != 2) {
            throw InvariantError("non-manifold edge in generated mesh");
        }
    }
    return out;
}

std::vector<PeriodicPair> build_periodic_pairs(const std::vector<Vec2>& nodes) {
    auto face_nodes = [&](bool x_axis, double value) {
        std::vector<std::pair<double, int>> out;
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
            const double c = x_axis ? nodes[i].x : nodes[i].y;
            const double tang = x_axis ? nodes[i].y : nodes[i].x;
            if (std::abs(c - value) < kFaceTol) out.push_back({tang, i});
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<PeriodicPair> pairs;
    for (int axis = 0; axis < 2; ++axis) {
        const bool x_axis = (axis == 0);
        auto lo = face_nodes(x_axis, -0.5);
        auto hi = face_nodes(x_axis, 0.5);
        if (lo.size() != hi.size())
            throw InvariantError("periodic faces carry different node counts");
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (std::abs(lo[i].first - hi[i].first) > 1e-10)
                throw InvariantError("periodic node traces do not match");
            pairs.push_back({lo[i].second, hi[i].second,
                             x_axis ? PeriodicAxis::X : PeriodicAxis::Y});
        }
    }
    return pairs;
}

void check_square_alignment(double half_width, double h_eff, double scale) {
    const double ratio = half_width * scale / (h_eff * scale);
    if (std::abs(ratio - std::llround(ratio)) > 1e-9)
        throw ConfigError(
            "square inclusion half-width must be an integer multiple of the mesh spacing "
            "(got half-width/h = " +
            std::to_string(ratio) + ")");
}

}  // namespace

double Mesh::triangle_area(int t) const {
    const auto& tr = triangles[t];
    return signed_area(nodes[tr[0]], nodes[tr[1]], nodes[tr[2]]);
}

Vec2 Mesh::centroid(int t) const {
    const auto& tr = triangles[t];
    return (nodes[tr[0]] + nodes[tr[1]] + nodes[tr[2]]) / 3.0;
}

double Mesh::total_area() const {
    double a = 0.0;
    for (int t = 0; t < triangle_count(); ++t) a += triangle_area(t);
    return a;
}

double Mesh::boundary_length(BoundaryTag tag) const {
    double len = 0.0;
    for (const auto& e : boundary_edges)
        if (e.tag == tag) len += (nodes[e.b] - nodes[e.a]).norm();
    return len;
}

int Mesh::boundary_count(BoundaryTag tag) const {
    int n = 0;
    for (const auto& e : boundary_edges)
        if (e.tag == tag) ++n;
    return n;
}

std::vector<std::vector<int>> Mesh::hole_loops() const {
    std::map<int, std::vector<int>> next;  // node -> successors along hole edges
    for (const auto& e : boundary_edges)
        if (e.tag == BoundaryTag::Hole) next[e.a].push_back(e.b);
    std::vector<std::vector<int>> loops;
    std::map<int, bool> used;
    for (const auto& [start, _] : next) {
        if (used[start]) continue;
        std::vector<int> loop;
        int cur = start;
        while (true) {
            loop.push_back(cur);
            used[cur] = true;
            const auto it = next.find(cur);
            if (it == next.end() || it->second.size() != 1)
                throw InvariantError("hole boundary is not a set of simple loops");
            cur = it->second[0];
            if (cur == start) break;
            if (used[cur]) throw InvariantError("hole boundary loop is not simple");
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

std::vector<bool> Mesh::nodes_on_tag(BoundaryTag tag) const {
    std::vector<bool> mask(nodes.size(), false);
    for (const auto& e : boundary_edges) {
        if (e.tag == tag) {
            mask[e.a] = true;
            mask[e.b] = true;
        }
    }
    return mask;
}

std::vector<bool> Mesh::boundary_node_mask() const {
    std::vector<bool> mask(nodes.size(), false);
    for (const auto& e : boundary_edges) {
        mask[e.a] = true;
        mask[e.b] = true;
    }
    return mask;
}

void Mesh::validate() const {
    for (int t = 0; t < triangle_count(); ++t) {
        if (!(triangle_area(t) > 0.0))
            throw InvariantError("triangle " + std::to_string(t) + " has nonpositive area");
    }

    std::map<EdgeKey, int> count;
    for (const auto& t : triangles)
        for (int e = 0; e < 3; ++e) count[EdgeKey(t[e], t[(e + 1) % 3])] += 1;
    int boundary_edge_count = 0;
    for (const auto& [key, c] : count) {
        if (c == 1)
            ++boundary_edge_count;
        else if (c != 2)
            throw InvariantError("edge shared by more than two triangles");
    }
    if (boundary_edge_count != static_cast<int>(boundary_edges.size()))
        throw InvariantError("boundary edge list does not match triangle topology");

    for (const auto& p : periodic_pairs) {
        const Vec2 m = nodes[p.master], s = nodes[p.slave];
        const double offset = (p.axis == PeriodicAxis::X) ? s.x - m.x : s.y - m.y;
        const double tang = (p.axis == PeriodicAxis::X) ? s.y - m.y : s.x - m.x;
        if (std::abs(offset - 1.0) > 1e-10 || std::abs(tang) > 1e-10)
            throw InvariantError("periodic pair coordinates inconsistent");
    }

    if (kind != MeshKind::Plain && !cell.is_empty()) {
        Carver cv;
        LatticeIndexSet lat;
        cv.cell = &cell;
        if (kind == MeshKind::Macro) {
            lat = lattice_cells(macro, cell, eps);
            cv.lattice = &lat;
            cv.scale = eps;
        }
        for (const auto& n : nodes) {
            if (cv.phi(n) < -1e-12)
                throw InvariantError("node lies strictly inside an inclusion");
        }
        const double tol = std::max(1e-9, 0.5 * h * h);
        auto hole_mask = nodes_on_tag(BoundaryTag::Hole);
        for (int i = 0; i < node_count(); ++i) {
            if (hole_mask[i] && std::abs(cv.phi(nodes[i])) > tol)
                throw InvariantError("hole vertex is off the inclusion boundary");
        }
        hole_loops();  // throws if loops are not closed and simple
    }
}

Mesh generate_cell_mesh(const CellGeometry& cell, double h, bool symmetric_pattern) {
    if (!(h > 0.0)) throw ConfigError("mesh size h must be positive");
    if (cell.shape == InclusionShape::Disk && !(h < (0.5 - cell.size) / 2.0))
        throw ConfigError("h too coarse: the gap between the inclusion and the cell boundary "
                          "needs at least two element layers");

    const int n = std::max(2, static_cast<int>(std::llround(1.0 / h)));
    const double h_eff = 1.0 / n;
    if (cell.shape == InclusionShape::Square) check_square_alignment(cell.size, h_eff, 1.0);

    Builder b;
    b.add_grid(-0.5, 0.5, -0.5, 0.5, n, n, symmetric_pattern);
    if (!cell.is_empty()) {
        Carver cv;
        cv.cell = &cell;
        b.carve(cv);
        b.delaunay_flips();
    }

    Mesh m;
    m.kind = MeshKind::Cell;
    m.cell = cell;
    m.h = h_eff;
    m.nodes = std::move(b.nodes);
    m.triangles = std::move(b.tris);
    m.boundary_edges = extract_boundary(m, [&](Vec2 p, Vec2 q) {
        if (std::abs(p.x + 0.5) < kFaceTol && std::abs(q.x + 0.5) < kFaceTol)
            return BoundaryTag::PeriodicX;
        if (std::abs(p.x - 0.5) < kFaceTol && std::abs(q.x - 0.5) < kFaceTol)
            return BoundaryTag::PeriodicX;
        if (std::abs(p.y + 0.5) < kFaceTol && std::abs(q.y + 0.5) < kFaceTol)
            return BoundaryTag::PeriodicY;
        if (std::abs(p.y - 0.5) < kFaceTol && std::abs(q.y - 0.5) < kFaceTol)
            return BoundaryTag::PeriodicY;
        return BoundaryTag::Hole;
    });
    m.periodic_pairs = build_periodic_pairs(m.nodes);

    if (!cell.is_empty()) {
        int hole_segments = m.boundary_count(BoundaryTag::Hole);
        const int required =
            std::max(kMinHoleSegments, static_cast<int>(std::ceil(cell.perim_inclusion() / h)));
        if (hole_segments < required)
            throw ConfigError("h too coarse to resolve the inclusion boundary: " +
                              std::to_string(hole_segments) + " segments, need " +
                              std::to_string(required));
    }
    m.validate();
    return m;
}

Mesh generate_macro_mesh(const MacroGeometry& macro, const CellGeometry& cell, double eps,
                         double h) {
    macro.validate();
    if (cell.is_empty()) {
        Mesh m = generate_plain_mesh(macro, h);
        m.kind = MeshKind::Macro;
        m.eps = eps;
        return m;
    }
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0,1)");
    if (!(h > 0.0) || h > eps / 8.0 * (1.0 + 1e-9))
        throw ConfigError("macro mesh size must satisfy h <= eps/8 so holes stay resolved");

    const int nx = std::max(1, static_cast<int>(std::llround(macro.width() / h)));
    const int ny = std::max(1, static_cast<int>(std::llround(macro.height() / h)));
    const double hx = macro.width() / nx, hy = macro.height() / ny;
    const double h_eff = std::max(hx, hy);

    const LatticeIndexSet lattice = lattice_cells(macro, cell, eps);
    if (cell.shape == InclusionShape::Square) check_square_alignment(cell.size * eps, h_eff, 1.0);

    // Holes too close to the outer boundary cannot be carved cleanly.
    const double reach = eps * cell.size;
    for (const auto& k : lattice.cells) {
        const double cx = eps * k[0], cy = eps * k[1];
        const double gap = std::min(std::min(cx - reach - macro.x_min, macro.x_max - cx - reach),
                                    std::min(cy - reach - macro.y_min, macro.y_max - cy - reach));
        if (gap < 2.0 * h_eff)
            throw ConfigError("inclusion at lattice cell (" + std::to_string(k[0]) + "," +
                              std::to_string(k[1]) + ") is under-resolved near the boundary");
    }

    Builder b;
    b.add_grid(macro.x_min, macro.x_max, macro.y_min, macro.y_max, nx, ny, false);
    Carver cv;
    cv.cell = &cell;
    cv.lattice = &lattice;
    cv.scale = eps;
    b.carve(cv);
    b.delaunay_flips();

    Mesh m;
    m.kind = MeshKind::Macro;
    m.cell = cell;
    m.macro = macro;
    m.eps = eps;
    m.h = h_eff;
    m.nodes = std::move(b.nodes);
    m.triangles = std::move(b.tris);
    m.boundary_edges = extract_boundary(m, [&](Vec2 p, Vec2 q) {
        const bool outer = std::abs(p.x - macro.x_min) < kFaceTol ||
                           std::abs(p.x - macro.x_max) < kFaceTol ||
                           std::abs(p.y - macro.y_min) < kFaceTol ||
                           std::abs(p.y - macro.y_max) < kFaceTol;
        if (!outer) return BoundaryTag::Hole;
        MacroEdge e;
        try {
            e = macro.classify_edge(p, q);
        } catch (const InvariantError&) {
            return BoundaryTag::Hole;
        }
        return macro.is_gamma1(e) ? BoundaryTag::Gamma1 : BoundaryTag::Gamma2;
    });

    const auto loops = m.hole_loops();
    if (loops.size() != lattice.cells.size())
        throw InvariantError("hole loop count " + std::to_string(loops.size()) +
                             " does not match lattice cell count " +
                             std::to_string(lattice.cells.size()));
    for (const auto& loop : loops) {
        if (static_cast<int>(loop.size()) < kMinHoleSegments)
            throw ConfigError("a hole is resolved with fewer than 16 segments; decrease h");
    }
    m.validate();
    return m;
}

Mesh generate_plain_mesh(const MacroGeometry& macro, double h) {
    macro.validate();
    if (!(h > 0.0)) throw ConfigError("mesh size h must be positive");
    const int nx = std::max(1, static_cast<int>(std::llround(macro.width() / h)));
    const int ny = std::max(1, static_cast<int>(std::llround(macro.height() / h)));

    Builder b;
    b.add_grid(macro.x_min, macro.x_max, macro.y_min, macro.y_max, nx, ny, false);

    Mesh m;
    m.kind = MeshKind::Plain;
    m.macro = macro;
    m.h = std::max(macro.width() / nx, macro.height() / ny);
    m.nodes = std::move(b.nodes);
    m.triangles = std::move(b.tris);
    m.boundary_edges = extract_boundary(m, [&](Vec2 p, Vec2 q) {
        const MacroEdge e = macro.classify_edge(p, q);
        return macro.is_gamma1(e) ? BoundaryTag::Gamma1 : BoundaryTag::Gamma2;
    });
    m.validate();
    return m;
}

Mesh refine(const Mesh& mesh) {
    Mesh out;
    out.kind = mesh.kind;
    out.cell = mesh.cell;
    out.macro = mesh.macro;
    out.eps = mesh.eps;
    out.h = mesh.h / 2.0;
    out.nodes = mesh.nodes;

    Carver cv;
    LatticeIndexSet lat;
    const bool project_holes = (mesh.kind != MeshKind::Plain) && !mesh.cell.is_empty();
    if (project_holes) {
        cv.cell = &mesh.cell;
        if (mesh.kind == MeshKind::Macro) {
            lat = lattice_cells(mesh.macro, mesh.cell, mesh.eps);
            cv.lattice = &lat;
            cv.scale = mesh.eps;
        }
    }

    std::map<EdgeKey, bool> hole_edge;
    for (const auto& e : mesh.boundary_edges)
        if (e.tag == BoundaryTag::Hole) hole_edge[EdgeKey(e.a, e.b)] = true;

    std::map<EdgeKey, int> midpoint;
    auto mid = [&](int u, int v) {
        const EdgeKey key(u, v);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        Vec2 p = (mesh.nodes[u] + mesh.nodes[v]) * 0.5;
        if (project_holes && hole_edge.count(key)) p = cv.project(p);
        out.nodes.push_back(p);
        const int id = static_cast<int>(out.nodes.size()) - 1;
        midpoint.emplace(key, id);
        return id;
    };

    for (const auto& t : mesh.triangles) {
        const int mab = mid(t[0], t[1]), mbc = mid(t[1], t[2]), mca = mid(t[2], t[0]);
        out.triangles.push_back({t[0], mab, mca});
        out.triangles.push_back({mab, t[1], mbc});
        out.triangles.push_back({mca, mbc, t[2]});
        out.triangles.push_back({mab, mbc, mca});
    }
    for (const auto& e : mesh.boundary_edges) {
        const int m = mid(e.a, e.b);
        out.boundary_edges.push_back({e.a, m, e.tag});
        out.boundary_edges.push_back({m, e.b, e.tag});
    }
    if (mesh.kind == MeshKind::Cell) out.periodic_pairs = build_periodic_pairs(out.nodes);
    out.validate();
    return out;
}

}  // namespace perihom
