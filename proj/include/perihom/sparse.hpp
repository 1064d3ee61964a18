#pragma once

#include <vector>

#include "perihom/dense.hpp"

namespace perihom {

// Symmetric sparse matrix over the reduced dof space; only the upper
// triangle (including the diagonal) is stored, so symmetry is structural.
struct SparseSymMatrix {
    int n = 0;
    std::vector<int> row_ptr;  // size n+1
    std::vector<int> cols;
    std::vector<double> vals;

    // y = A x using the full symmetric action.
    void mul(const std::vector<double>& x, std::vector<double>& y) const;
    std::vector<double> mul(const std::vector<double>& x) const;

    std::vector<double> diagonal() const;
    DenseMatrix to_dense() const;  // tests and the small direct oracle
};

// Accumulates symmetric contributions; entries with row > col are dropped
// (their transposed twin arrives from the symmetric element matrix).
struct TripletBuffer {
    int n = 0;
    struct Entry {
        int row, col;
        double val;
    };
    std::vector<Entry> entries;

    explicit TripletBuffer(int n_) : n(n_) {}

    void add(int row, int col, double val) {
        if (row < 0 || col < 0 || row > col) return;
        entries.push_back({row, col, val});
    }

    // Deterministic compression: stable sort by (row, col), then in-order
    // summation of duplicates.
    SparseSymMatrix build() const;
};

}  // namespace perihom
