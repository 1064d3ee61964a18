#include <doctest.h>

#include <cmath>

#include "perihom/assembly.hpp"
#include "perihom/corrector.hpp"

using namespace perihom;

namespace {
const MaterialSpec kIso11 = MaterialSpec::isotropic(1.0, 1.0);
}

TEST_SUITE("corrector") {

TEST_CASE("empty cell with constant tensor: correctors vanish") {
    const Mesh m = generate_cell_mesh(CellGeometry::empty(), 0.125);
    const CorrectorSet set = solve_correctors(m, kIso11, 1e-10);
    for (auto [i, j] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{0, 1}}) {
        CHECK(l2_norm(set.mesh(), set.chi(i, j)) < 1e-10);
    }
}

TEST_CASE("disk cell: correctors are nontrivial and normalized") {
    const Mesh m = generate_cell_mesh(CellGeometry::disk(0.25), 0.05);
    const CorrectorSet set = solve_correctors(m, kIso11, 1e-10);
    CHECK(l2_norm(set.mesh(), set.chi(0, 0)) > 1e-3);

    for (auto [i, j] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{0, 1}}) {
        const Vec2 mean = field_mean(set.mesh(), set.chi(i, j));
        CHECK(std::abs(mean.x) * set.mesh().total_area() < 1e-10);
        CHECK(std::abs(mean.y) * set.mesh().total_area() < 1e-10);
        CHECK(set.report(i, j).converged);
        CHECK(set.report(i, j).relative_residual <= 1e-10);
    }

    // The (2,1) slot aliases (1,2) exactly.
    const auto& a = set.chi(0, 1).values;
    const auto& b = set.chi(1, 0).values;
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].x == b[k].x);
        CHECK(a[k].y == b[k].y);
    }

    // Periodic constraints hold exactly: slave values equal master values.
    for (const auto& p : set.mesh().periodic_pairs) {
        CHECK(set.chi(0, 0).values[p.master].x == set.chi(0, 0).values[p.slave].x);
        CHECK(set.chi(0, 0).values[p.master].y == set.chi(0, 0).values[p.slave].y);
    }
}

TEST_CASE("swap symmetry: chi22 is chi11 with coordinates and components swapped") {
    const Mesh m = generate_cell_mesh(CellGeometry::disk(0.25), 0.0625, true);
    const CorrectorSet set = solve_correctors(m, kIso11, 1e-12);
    for (Vec2 y : {Vec2{0.3, 0.1}, Vec2{-0.35, 0.2}, Vec2{0.05, -0.4}, Vec2{0.31, 0.33}}) {
        const Vec2 a = set.evaluate(0, 0, y);
        const Vec2 b = set.evaluate(1, 1, {y.y, y.x});
        CHECK(a.x == doctest::Approx(b.y).epsilon(1e-7));
        CHECK(a.y == doctest::Approx(b.x).epsilon(1e-7));
    }
}

TEST_CASE("evaluation: nodal identity, periodicity, inclusion rejection") {
    const Mesh m = generate_cell_mesh(CellGeometry::disk(0.25), 0.1);
    const CorrectorSet set = solve_correctors(m, kIso11, 1e-10);

    // Interior nodes reproduce their nodal values.
    const auto on_boundary = m.boundary_node_mask();
    int tested = 0;
    for (int n = 0; n < m.node_count() && tested < 10; ++n) {
        if (on_boundary[n]) continue;
        const Vec2 v = set.evaluate(0, 0, m.nodes[n]);
        CHECK(v.x == doctest::Approx(set.chi(0, 0).values[n].x).epsilon(1e-12));
        CHECK(v.y == doctest::Approx(set.chi(0, 0).values[n].y).epsilon(1e-12));
        ++tested;
    }
    REQUIRE(tested == 10);

    const Vec2 y{0.3, 0.1};
    const Vec2 a = set.evaluate(0, 1, y);
    const Vec2 b = set.evaluate(0, 1, {y.x + 1.0, y.y});
    CHECK(a.x == doctest::Approx(b.x).epsilon(1e-12));
    CHECK(a.y == doctest::Approx(b.y).epsilon(1e-12));

    CHECK_THROWS_AS((void)set.evaluate(0, 0, {0.05, 0.05}), ConfigError);
    // The extension variant is total and matches the boundary trace.
    const Vec2 ext = set.evaluate_extended(0, 0, {0.05, 0.05});
    const Vec2 proj = set.evaluate(0, 0, m.cell.project_to_boundary({0.05, 0.05}));
    CHECK(ext.x == doctest::Approx(proj.x).epsilon(1e-10));
    CHECK(ext.y == doctest::Approx(proj.y).epsilon(1e-10));
}

TEST_CASE("energy pairing: empty-cell value, symmetry, Voigt interval") {
    const Mesh empty = generate_cell_mesh(CellGeometry::empty(), 0.125);
    const CorrectorSet eset = solve_correctors(empty, kIso11, 1e-10);
    CHECK(eset.energy(0, 0, 0, 0) == doctest::Approx(3.0).epsilon(1e-12));

    const Mesh m = generate_cell_mesh(CellGeometry::disk(0.25), 0.05);
    const CorrectorSet set = solve_correctors(m, kIso11, 1e-10);
    CHECK(set.energy(0, 0, 1, 1) == doctest::Approx(set.energy(1, 1, 0, 0)).epsilon(1e-12));
    const double q1111 = set.energy(0, 0, 0, 0);
    CHECK(q1111 > 0.0);
    CHECK(q1111 < (1.0 - kPi / 16.0) * 3.0);
}

TEST_CASE("Galerkin orthogonality of the discrete cell problems") {
    const Mesh m = generate_cell_mesh(CellGeometry::disk(0.25), 0.05);
    const CorrectorSet set = solve_correctors(m, kIso11, 1e-12);

    // Fold periodicity but keep the kernel: the mean-shifted correctors are
    // representable there and constants do not change the pairing.
    DofMapOptions opt;
    opt.fold_periodic = true;
    const DofMap dofs = make_dof_map(m, opt);
    TripletBuffer buf(dofs.n_reduced);
    add_elastic(buf, m, dofs, [&](Vec2 y) { return kIso11.mandel_at(y); });
    const auto K = buf.build();

    for (auto [i, j] : {std::pair{0, 0}, std::pair{0, 1}}) {
        const auto rhs = cell_problem_rhs(m, dofs, kIso11, i, j);
        const auto chi_r = restrict_field(dofs, set.chi(i, j));
        const auto test_r = restrict_field(dofs, set.chi(1, 1));
        // a(chi^ij, w) = rhs(w) for the discrete test function w = chi^11.
        const auto k_chi = K.mul(chi_r);
        double lhs = 0.0, rl = 0.0, scale = 0.0;
        for (std::size_t n = 0; n < chi_r.size(); ++n) {
            lhs += k_chi[n] * test_r[n];
            rl += rhs[n] * test_r[n];
            scale += std::abs(rhs[n] * test_r[n]);
        }
        CHECK(std::abs(lhs - rl) <= 1e-8 * (scale + 1e-30));
    }
}

TEST_CASE("energy matrix is symmetric positive semidefinite") {
    const Mesh m = generate_cell_mesh(CellGeometry::disk(0.25), 0.05);
    const CorrectorSet set = solve_correctors(m, kIso11, 1e-10);
    const std::array<std::pair<int, int>, 3> pairs = {{{0, 0}, {1, 1}, {0, 1}}};
    Mat3 e;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            e(a, b) = set.energy(pairs[a].first, pairs[a].second, pairs[b].first, pairs[b].second);
    CHECK(e.is_symmetric(1e-10 * e.max_abs()));
    const auto ev = e.eigenvalues();
    CHECK(ev[0] >= -1e-9 * e.max_abs());
}

TEST_CASE("normalization is idempotent") {
    const Mesh m = generate_cell_mesh(CellGeometry::disk(0.25), 0.1);
    const CorrectorSet set = solve_correctors(m, kIso11, 1e-10);
    NodalField f = set.chi(0, 0);
    const Vec2 mean = field_mean(set.mesh(), f);
    for (auto& v : f.values) v -= mean;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        CHECK(f.values[k].x == doctest::Approx(set.chi(0, 0).values[k].x).epsilon(1e-13));
        CHECK(f.values[k].y == doctest::Approx(set.chi(0, 0).values[k].y).epsilon(1e-13));
    }
}

TEST_CASE("non-cell meshes are rejected") {
    const Mesh plain = generate_plain_mesh(MacroGeometry{}, 0.25);
    CHECK_THROWS_AS((void)solve_correctors(plain, kIso11, 1e-10), ConfigError);
}

}  // TEST_SUITE
