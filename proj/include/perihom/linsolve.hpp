#pragma once

#include "perihom/sparse.hpp"

namespace perihom {

struct SolveReport {
    long iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

struct CgResult {
    std::vector<double> x;
    SolveReport report;
};

// Jacobi-preconditioned conjugate gradients for SPD systems. Stops when
// ||b - A x|| <= tol ||b||; max_iter < 0 means the default 20 * n. The
// iterate sequence is deterministic. b = 0 returns x = 0 in 0 iterations.
// Non-convergence is reported, not thrown; callers decide.
CgResult cg_solve(const SparseSymMatrix& a, const std::vector<double>& b, double tol,
                  long max_iter = -1, const std::vector<double>* x0 = nullptr);

// As cg_solve but throws SolverError when the contract is not met.
std::vector<double> cg_solve_checked(const SparseSymMatrix& a, const std::vector<double>& b,
                                     double tol, SolveReport* report = nullptr);

}  // namespace perihom
