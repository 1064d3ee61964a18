#include "perihom/dofmap.hpp"

#include <functional>
#include <numeric>

namespace perihom {

DofMap make_dof_map(const Mesh& mesh, const DofMapOptions& opt) {
    const int n = mesh.node_count();

    // Union-find over periodic pairs; chains (corner orbits) resolve to a
    // single terminal master.
    std::vector<int> master(static_cast<std::size_t>(n));
    std::iota(master.begin(), master.end(), 0);
    if (opt.fold_periodic) {
        std::function<int(int)> find = [&](int i) {
            while (master[static_cast<std::size_t>(i)] != i) {
                master[static_cast<std::size_t>(i)] =
                    master[static_cast<std::size_t>(master[static_cast<std::size_t>(i)])];
                i = master[static_cast<std::size_t>(i)];
            }
            return i;
        };
        for (const auto& p : mesh.periodic_pairs) {
            const int rm = find(p.master), rs = find(p.slave);
            if (rm != rs) master[static_cast<std::size_t>(std::max(rm, rs))] = std::min(rm, rs);
        }
        for (int i = 0; i < n; ++i) master[static_cast<std::size_t>(i)] = find(i);
    }

    std::vector<bool> eliminated(static_cast<std::size_t>(n), false);
    if (opt.clamp_gamma1) {
        const auto g1 = mesh.nodes_on_tag(BoundaryTag::Gamma1);
        for (int i = 0; i < n; ++i)
            if (g1[static_cast<std::size_t>(i)]) eliminated[static_cast<std::size_t>(i)] = true;
    }

    DofMap dm;
    dm.n_nodes = n;
    if (opt.pin_interior) {
        const auto on_boundary = mesh.boundary_node_mask();
        for (int i = 0; i < n; ++i) {
            if (!on_boundary[static_cast<std::size_t>(i)]) {
                dm.pinned_node = i;
                break;
            }
        }
        if (dm.pinned_node < 0)
            throw InvariantError("no interior node available for pinning (mesh too coarse)");
        eliminated[static_cast<std::size_t>(dm.pinned_node)] = true;
    }

    dm.rep.assign(static_cast<std::size_t>(2 * n), -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (master[static_cast<std::size_t>(i)] != i) continue;
        if (eliminated[static_cast<std::size_t>(i)]) continue;
        dm.rep[static_cast<std::size_t>(2 * i)] = next++;
        dm.rep[static_cast<std::size_t>(2 * i + 1)] = next++;
    }
    for (int i = 0; i < n; ++i) {
        const int m = master[static_cast<std::size_t>(i)];
        if (m == i) continue;
        dm.rep[static_cast<std::size_t>(2 * i)] = dm.rep[static_cast<std::size_t>(2 * m)];
        dm.rep[static_cast<std::size_t>(2 * i + 1)] = dm.rep[static_cast<std::size_t>(2 * m + 1)];
    }
    dm.n_reduced = next;
    return dm;
}

}  // namespace perihom
