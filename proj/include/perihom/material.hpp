#pragma once

#include <array>
#include <vector>

#include "perihom/dense.hpp"
#include "perihom/geometry.hpp"

namespace perihom {

// Symmetric 2x2 tensor (strain or stress) with Mandel packing helpers.
struct Sym2 {
    double m11 = 0.0, m22 = 0.0, m12 = 0.0;

    std::array<double, 3> mandel() const { return {m11, m22, m12 * std::sqrt(2.0)}; }
    static Sym2 from_mandel(const std::array<double, 3>& v) {
        return {v[0], v[1], v[2] / std::sqrt(2.0)};
    }
    double norm() const { return std::sqrt(m11 * m11 + m22 * m22 + 2.0 * m12 * m12); }
};

// Mandel vectors of the symmetrized basis tensors sym(e_i x e_j), i,j in {0,1}.
std::array<double, 3> mandel_basis(int i, int j);

// Y-periodic trigonometric polynomial c0 + sum amp * cos/sin(2 pi k.y).
struct TrigTerm {
    int k1 = 0, k2 = 0;
    bool use_sin = false;
    double amp = 0.0;
};

struct TrigPoly {
    double c0 = 0.0;
    std::vector<TrigTerm> terms;

    double eval(Vec2 y) const;
    bool is_constant() const { return terms.empty(); }
};

// Density on the inclusion boundary, a trigonometric polynomial in the
// normalized arc parameter s in [0,1).
struct ArcPoly {
    double c0 = 1.0;
    std::vector<TrigTerm> terms;  // k1 is the harmonic index; k2 unused

    double eval(double s) const;
    double min_sampled(int n_samples = 1024) const;
    bool is_constant() const { return terms.empty(); }
};

// Elasticity tensor a_ijkh(y) (as a field of Mandel matrices), coercivity
// constant alpha, and the Robin density theta on dT with lower bound alpha0.
// The tensor is either isotropic or piecewise constant on a uniform grid
// partition of Y (Y-periodic by construction).
struct MaterialSpec {
    enum class Model { Isotropic, BlockGrid };

    Model model = Model::Isotropic;
    double lambda = 1.0, mu = 1.0;
    int grid_div = 1;
    std::vector<Mat3> blocks;  // grid_div^2 Mandel matrices, row-major from (-1/2,-1/2)

    double alpha = 2.0;  // coercivity: z:a:z >= alpha |z|^2

    ArcPoly theta;
    double alpha0 = 1.0;

    static MaterialSpec isotropic(double lambda, double mu);
    static MaterialSpec block_grid(int div, std::vector<Mat3> blocks, double alpha);

    MaterialSpec& with_theta(ArcPoly th, double alpha0_);

    // Mandel matrix of a at y (wrapped into Y internally).
    Mat3 mandel_at(Vec2 y) const;
    static Mat3 isotropic_mandel(double lambda, double mu);

    // theta evaluated at the boundary point of T nearest to y.
    double theta_at(const CellGeometry& cell, Vec2 y) const;

    // Tensor symmetries, coercivity (Mandel eigenvalues >= alpha) and
    // theta >= alpha0 on a dense sample; throws InvariantError on failure.
    void validate() const;
};

// Volume force f (Y-periodic, per component) and constant tractions per
// macro edge; tractions act only on the Gamma2 part.
struct LoadSpec {
    TrigPoly f1, f2;
    std::array<Vec2, 4> traction{};  // Left, Right, Bottom, Top

    static LoadSpec constant(Vec2 f);

    Vec2 f_at(Vec2 y) const { return {f1.eval(y), f2.eval(y)}; }
    bool f_is_constant() const { return f1.is_constant() && f2.is_constant(); }
    Vec2 traction_on(MacroEdge e) const { return traction[static_cast<int>(e)]; }
};

}  // namespace perihom
