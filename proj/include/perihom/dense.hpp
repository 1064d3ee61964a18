#pragma once

#include <array>
#include <vector>

#include "perihom/core.hpp"

namespace perihom {

// Symmetric 3x3 matrix, the Mandel packing of a 2D fourth-order tensor with
// minor and major symmetries. Basis order: (11, 22, 12*sqrt2).
struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }

    std::array<double, 3> mul(const std::array<double, 3>& v) const;
    double quad(const std::array<double, 3>& v) const;  // v^T M v

    Mat3 operator+(const Mat3& o) const;
    Mat3 operator-(const Mat3& o) const;
    Mat3 operator*(double s) const;

    double max_abs() const;
    bool is_symmetric(double tol) const;

    // Eigenvalues in ascending order (cyclic Jacobi; exact symmetry assumed).
    std::array<double, 3> eigenvalues() const;
};

// Row-major dense matrix used by the small direct-solve oracle and the
// rank/definiteness checks in tests. Not meant for large systems.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a;  // n*n, row-major

    explicit DenseMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// Cholesky solve for SPD systems up to a few hundred dofs. Throws SolverError
// if a pivot is not strictly positive.
std::vector<double> dense_spd_solve(DenseMatrix a, std::vector<double> b);

// True iff the Cholesky factorization exists with all pivots > tol.
bool dense_is_spd(DenseMatrix a, double tol);

// Numerical rank via symmetric Gaussian elimination with diagonal pivoting.
int dense_sym_rank(DenseMatrix a, double rel_tol);

}  // namespace perihom
