#include "perihom/dense.hpp"

#include <algorithm>
#include <cmath>

namespace perihom {

std::array<double, 3> Mat3::mul(const std::array<double, 3>& v) const {
    std::array<double, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return r;
}

double Mat3::quad(const std::array<double, 3>& v) const {
    auto mv = mul(v);
    return v[0] * mv[0] + v[1] * mv[1] + v[2] * mv[2];
}

Mat3 Mat3::operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
    return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
    return r;
}

Mat3 Mat3::operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] * s;
    return r;
}

double Mat3::max_abs() const {
    double v = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v = std::max(v, std::abs(m[i][j]));
    return v;
}

bool Mat3::is_symmetric(double tol) const {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(m[i][j] - m[j][i]) > tol) return false;
    return true;
}

std::array<double, 3> Mat3::eigenvalues() const {
    // Cyclic Jacobi on a local copy; 3x3 converges in a handful of sweeps.
    std::array<std::array<double, 3>, 3> a = m;
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off < 1e-15 * (1.0 + std::abs(a[0][0]) + std::abs(a[1][1]) + std::abs(a[2][2]))) break;
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                std::array<std::array<double, 3>, 3> r = a;
                for (int k = 0; k < 3; ++k) {
                    r[p][k] = c * a[p][k] - s * a[q][k];
                    r[q][k] = s * a[p][k] + c * a[q][k];
                }
                a = r;
                for (int k = 0; k < 3; ++k) {
                    r[k][p] = c * a[k][p] - s * a[k][q];
                    r[k][q] = s * a[k][p] + c * a[k][q];
                }
                a = r;
            }
        }
    }
    std::array<double, 3> ev = {a[0][0], a[1][1], a[2][2]};
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::vector<double> dense_spd_solve(DenseMatrix a, std::vector<double> b) {
    const int n = a.n;
    // In-place lower Cholesky.
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (d <= 0.0) throw SolverError("dense_spd_solve: matrix not positive definite");
        const double l = std::sqrt(d);
        a(j, j) = l;
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / l;
        }
    }
    for (int i = 0; i < n; ++i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) s -= a(i, k) * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(i)] = s / a(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k) s -= a(k, i) * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(i)] = s / a(i, i);
    }
    return b;
}

bool dense_is_spd(DenseMatrix a, double tol) {
    const int n = a.n;
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (d <= tol) return false;
        const double l = std::sqrt(d);
        a(j, j) = l;
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / l;
        }
    }
    return true;
}

int dense_sym_rank(DenseMatrix a, double rel_tol) {
    const int n = a.n;
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
    if (scale == 0.0) return 0;
    const double tol = rel_tol * scale;

    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;

    int rank = 0;
    for (int step = 0; step < n; ++step) {
        // Diagonal pivoting keeps the reduction symmetric.
        int piv = step;
        for (int i = step; i < n; ++i)
            if (std::abs(a(perm[i], perm[i])) > std::abs(a(perm[piv], perm[piv]))) piv = i;
        std::swap(perm[static_cast<std::size_t>(step)], perm[static_cast<std::size_t>(piv)]);
        const int p = perm[static_cast<std::size_t>(step)];
        if (std::abs(a(p, p)) <= tol) break;
        ++rank;
        for (int ii = step + 1; ii < n; ++ii) {
            const int i = perm[static_cast<std::size_t>(ii)];
            const double f = a(i, p) / a(p, p);
            for (int jj = step + 1; jj < n; ++jj) {
                const int j = perm[static_cast<std::size_t>(jj)];
                a(i, j) -= f * a(p, j);
            }
        }
    }
    return rank;
}

}  // namespace perihom
