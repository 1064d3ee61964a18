#pragma once

#include <vector>

#include "perihom/mesh.hpp"

namespace perihom {

struct DofMapOptions {
    bool clamp_gamma1 = false;  // Dirichlet u = 0 on Gamma1 nodes
    bool fold_periodic = false;  // identify slave dofs with their masters
    bool pin_interior = false;   // eliminate one interior node (both components)
};

// Node/component -> reduced index map after constraint elimination. Slave
// dofs share their master's reduced index; Dirichlet and pinned dofs map
// to -1 and never enter the reduced system.
struct DofMap {
    int n_nodes = 0;
    int n_reduced = 0;
    std::vector<int> rep;  // size 2*n_nodes
    int pinned_node = -1;

    int dof(int node, int comp) const { return rep[static_cast<std::size_t>(2 * node + comp)]; }
};

DofMap make_dof_map(const Mesh& mesh, const DofMapOptions& opt);

}  // namespace perihom
