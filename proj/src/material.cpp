#include "perihom/material.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace perihom {

std::array<double, 3> mandel_basis(int i, int j) {
    if (i == 0 && j == 0) return {1.0, 0.0, 0.0};
    if (i == 1 && j == 1) return {0.0, 1.0, 0.0};
    if ((i == 0 && j == 1) || (i == 1 && j == 0)) return {0.0, 0.0, 1.0 / std::sqrt(2.0)};
    throw ConfigError("tensor index pair out of range");
}

double TrigPoly::eval(Vec2 y) const {
    double v = c0;
    for (const auto& t : terms) {
        const double arg = 2.0 * kPi * (t.k1 * y.x + t.k2 * y.y);
        v += t.amp * (t.use_sin ? std::sin(arg) : std::cos(arg));
    }
    return v;
}

double ArcPoly::eval(double s) const {
    double v = c0;
    for (const auto& t : terms) {
        const double arg = 2.0 * kPi * t.k1 * s;
        v += t.amp * (t.use_sin ? std::sin(arg) : std::cos(arg));
    }
    return v;
}

double ArcPoly::min_sampled(int n_samples) const {
    double m = eval(0.0);
    for (int i = 1; i < n_samples; ++i)
        m = std::min(m, eval(static_cast<double>(i) / n_samples));
    return m;
}

Mat3 MaterialSpec::isotropic_mandel(double lambda, double mu) {
    Mat3 a;
    a(0, 0) = lambda + 2.0 * mu;
    a(1, 1) = lambda + 2.0 * mu;
    a(0, 1) = a(1, 0) = lambda;
    a(2, 2) = 2.0 * mu;
    return a;
}

MaterialSpec MaterialSpec::isotropic(double lambda, double mu) {
    if (!(mu > 0.0) || lambda < 0.0)
        throw ConfigError("isotropic material requires mu > 0 and lambda >= 0");
    MaterialSpec m;
    m.model = Model::Isotropic;
    m.lambda = lambda;
    m.mu = mu;
    m.alpha = 2.0 * mu;
    return m;
}

MaterialSpec MaterialSpec::block_grid(int div, std::vector<Mat3> blocks, double alpha) {
    if (div < 1 || static_cast<int>(blocks.size()) != div * div)
        throw ConfigError("block grid needs div^2 tensor values");
    MaterialSpec m;
    m.model = Model::BlockGrid;
    m.grid_div = div;
    m.blocks = std::move(blocks);
    m.alpha = alpha;
    m.validate();
    return m;
}

MaterialSpec& MaterialSpec::with_theta(ArcPoly th, double alpha0_) {
    theta = std::move(th);
    alpha0 = alpha0_;
    const double m = theta.min_sampled();
    if (!(alpha0 > 0.0) || m < alpha0 - 1e-12)
        throw ConfigError("theta must stay >= alpha0 > 0 on dT (sampled minimum " +
                          std::to_string(m) + ")");
    return *this;
}

Mat3 MaterialSpec::mandel_at(Vec2 y) const {
    if (model == Model::Isotropic) return isotropic_mandel(lambda, mu);
    const Vec2 w = periodic_wrap(y);
    // Block (bi, bj) of the uniform grid partition of Y.
    const double u = std::clamp(w.x + 0.5, 0.0, std::nextafter(1.0, 0.0));
    const double v = std::clamp(w.y + 0.5, 0.0, std::nextafter(1.0, 0.0));
    const int bi = std::min(grid_div - 1, static_cast<int>(u * grid_div));
    const int bj = std::min(grid_div - 1, static_cast<int>(v * grid_div));
    return blocks[static_cast<std::size_t>(bj) * grid_div + bi];
}

double MaterialSpec::theta_at(const CellGeometry& cell, Vec2 y) const {
    if (theta.is_constant()) return theta.c0;
    return theta.eval(cell.arc_parameter(periodic_wrap(y)));
}

void MaterialSpec::validate() const {
    auto check = [&](const Mat3& a, const std::string& where) {
        if (!a.is_symmetric(1e-12 * (1.0 + a.max_abs())))
            throw InvariantError("elasticity tensor violates its symmetries (" + where + ")");
        const auto ev = a.eigenvalues();
        if (ev[0] < alpha - 1e-9 * (1.0 + a.max_abs()))
            throw InvariantError("elasticity tensor is not coercive with constant alpha (" +
                                 where + ": min eigenvalue " + std::to_string(ev[0]) + ")");
    };
    if (model == Model::Isotropic) {
        if (!(mu > 0.0) || lambda < 0.0)
            throw InvariantError("isotropic material requires mu > 0 and lambda >= 0");
        check(isotropic_mandel(lambda, mu), "isotropic");
    } else {
        for (std::size_t b = 0; b < blocks.size(); ++b)
            check(blocks[b], "block " + std::to_string(b));
    }
    if (!(alpha0 > 0.0)) throw InvariantError("alpha0 must be positive");
    if (theta.min_sampled() < alpha0 - 1e-12)
        throw InvariantError("theta drops below alpha0 on dT");
}

LoadSpec LoadSpec::constant(Vec2 f) {
    LoadSpec l;
    l.f1.c0 = f.x;
    l.f2.c0 = f.y;
    return l;
}

}  // namespace perihom
