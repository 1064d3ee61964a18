#include "perihom/linsolve.hpp"

#include <cmath>

namespace perihom {

namespace {
double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }
}  // namespace

CgResult cg_solve(const SparseSymMatrix& a, const std::vector<double>& b, double tol,
                  long max_iter, const std::vector<double>* x0) {
    if (!(tol > 0.0 && tol < 1.0)) throw SolverError("cg tolerance must lie in (0,1)");
    const std::size_t n = static_cast<std::size_t>(a.n);
    if (b.size() != n) throw SolverError("cg right-hand side has wrong length");
    if (max_iter < 0) max_iter = 20L * static_cast<long>(n);

    CgResult res;
    res.x.assign(n, 0.0);
    const double bnorm = norm(b);
    if (bnorm == 0.0) {
        res.report.converged = true;
        return res;
    }
    if (x0) res.x = *x0;

    std::vector<double> inv_diag = a.diagonal();
    for (double& d : inv_diag) {
        if (!(d > 0.0)) throw SolverError("cg requires strictly positive diagonal entries");
        d = 1.0 / d;
    }

    std::vector<double> r(n), z(n), p(n), ap(n);
    a.mul(res.x, ap);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot(r, z);
    double rnorm = norm(r);

    long it = 0;
    while (rnorm > tol * bnorm && it < max_iter) {
        a.mul(p, ap);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) throw SolverError("cg breakdown: matrix is not positive definite");
        const double alpha = rz / pap;
        for (std::size_t i = 0; i < n; ++i) res.x[i] += alpha * p[i];
        for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * ap[i];
        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        rz = rz_next;
        rnorm = norm(r);
        ++it;
    }

    res.report.iterations = it;
    res.report.relative_residual = rnorm / bnorm;
    res.report.converged = (rnorm <= tol * bnorm);
    return res;
}

std::vector<double> cg_solve_checked(const SparseSymMatrix& a, const std::vector<double>& b,
                                     double tol, SolveReport* report) {
    CgResult res = cg_solve(a, b, tol);
    if (report) *report = res.report;
    if (!res.report.converged)
        throw SolverError("cg did not converge: relative residual " +
                          std::to_string(res.report.relative_residual) + " after " +
                          std::to_string(res.report.iterations) + " iterations");
    return std::move(res.x);
}

}  // namespace perihom
