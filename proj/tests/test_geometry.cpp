#include <doctest.h>

#include <cmath>
#include <random>

#include "perihom/geometry.hpp"

using namespace perihom;

namespace {

// Independent oracle: enumerate all candidate indices and test the closed
// box around eps*(k+T) against the open rectangle analytically.
int brute_force_lattice_count(const MacroGeometry& macro, double reach_per_eps, double eps) {
    const int bound = static_cast<int>(1.0 / eps) + 2;
    int count = 0;
    for (int k2 = -bound; k2 <= bound; ++k2) {
        for (int k1 = -bound; k1 <= bound; ++k1) {
            const double r = eps * reach_per_eps;
            if (eps * k1 - r > macro.x_min && eps * k1 + r < macro.x_max &&
                eps * k2 - r > macro.y_min && eps * k2 + r < macro.y_max)
                ++count;
        }
    }
    return count;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("lattice cells: default disk at eps = 1/4") {
    MacroGeometry macro;
    const auto cell = CellGeometry::disk(0.25);
    const auto lat = lattice_cells(macro, cell, 0.25);
    CHECK(lat.cells.size() == 9);
    CHECK(static_cast<int>(lat.cells.size()) == brute_force_lattice_count(macro, 0.25, 0.25));
    for (const auto& k : lat.cells) {
        CHECK(k[0] >= 1);
        CHECK(k[0] <= 3);
        CHECK(k[1] >= 1);
        CHECK(k[1] <= 3);
    }
    // Count is a perfect square by symmetry of the unit square.
    const double root = std::sqrt(static_cast<double>(lat.cells.size()));
    CHECK(root == doctest::Approx(std::round(root)));
}

TEST_CASE("lattice cells: eps = 1/2 leaves a single interior cell") {
    MacroGeometry macro;
    const auto cell = CellGeometry::disk(0.25);
    const auto lat = lattice_cells(macro, cell, 0.5);
    REQUIRE(lat.cells.size() == 1);
    CHECK(lat.cells[0][0] == 1);
    CHECK(lat.cells[0][1] == 1);
    CHECK(static_cast<int>(lat.cells.size()) == brute_force_lattice_count(macro, 0.25, 0.5));
}

TEST_CASE("lattice cells: eps outside (0,1) rejected") {
    MacroGeometry macro;
    const auto cell = CellGeometry::disk(0.25);
    CHECK_THROWS_AS((void)lattice_cells(macro, cell, 1.0), ConfigError);
    CHECK_THROWS_AS((void)lattice_cells(macro, cell, 0.0), ConfigError);
    CHECK_THROWS_AS((void)lattice_cells(macro, cell, -0.25), ConfigError);
    CHECK_THROWS_AS((void)lattice_cells(macro, CellGeometry::empty(), 0.25), ConfigError);
}

TEST_CASE("lattice cells agree with the enumeration oracle across eps") {
    MacroGeometry macro;
    const auto cell = CellGeometry::disk(0.3);
    for (double eps : {0.25, 0.125, 0.0625, 0.1, 0.07}) {
        const auto lat = lattice_cells(macro, cell, eps);
        CHECK(static_cast<int>(lat.cells.size()) == brute_force_lattice_count(macro, 0.3, eps));
    }
}

TEST_CASE("every lattice inclusion keeps a positive distance to the boundary") {
    MacroGeometry macro;
    const auto cell = CellGeometry::disk(0.25);
    for (double eps : {0.25, 0.125, 0.0625}) {
        for (const auto& k : lattice_cells(macro, cell, eps).cells) {
            const double reach = eps * cell.size;
            const double gap =
                std::min(std::min(eps * k[0] - reach, 1.0 - eps * k[0] - reach),
                         std::min(eps * k[1] - reach, 1.0 - eps * k[1] - reach));
            CHECK(gap > 0.0);
        }
    }
}

TEST_CASE("covered volume and surface measures approach the domain limits") {
    MacroGeometry macro;
    const auto cell = CellGeometry::disk(0.25);
    double prev_defect = 2.0, prev_surface = 0.0;
    for (double eps : {0.25, 0.125, 0.0625}) {
        const auto lat = lattice_cells(macro, cell, eps);
        const double covered = eps * eps * static_cast<double>(lat.cells.size());
        const double defect = macro.area() - covered;
        CHECK(defect >= 0.0);
        CHECK(defect <= prev_defect);
        prev_defect = defect;

        const double surface = scaled_surface_measure(lat, cell);
        CHECK(surface > prev_surface);
        CHECK(surface < macro.area() * cell.perim_inclusion());
        prev_surface = surface;
    }
}

TEST_CASE("cell measures") {
    const auto disk = CellGeometry::disk(0.25);
    CHECK(disk.vol_inclusion() == doctest::Approx(kPi / 16.0).epsilon(1e-14));
    CHECK(disk.vol_solid() == doctest::Approx(1.0 - kPi / 16.0).epsilon(1e-14));
    CHECK(disk.perim_inclusion() == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK(disk.vol_inclusion() + disk.vol_solid() == doctest::Approx(1.0).epsilon(1e-15));

    const auto empty = CellGeometry::empty();
    CHECK(empty.vol_inclusion() == 0.0);
    CHECK(empty.vol_solid() == 1.0);
    CHECK(empty.perim_inclusion() == 0.0);

    const auto square = CellGeometry::square(0.25);
    CHECK(square.vol_inclusion() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(square.vol_solid() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(square.perim_inclusion() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("invalid inclusion sizes rejected") {
    CHECK_THROWS_AS((void)CellGeometry::disk(0.5), ConfigError);
    CHECK_THROWS_AS((void)CellGeometry::disk(0.0), ConfigError);
    CHECK_THROWS_AS((void)CellGeometry::disk(-0.1), ConfigError);
    CHECK_THROWS_AS((void)CellGeometry::square(0.5), ConfigError);
}

TEST_CASE("periodic wrap and the lattice characteristic function") {
    const auto disk = CellGeometry::disk(0.25);

    const Vec2 w = periodic_wrap({3.1, -2.1});
    CHECK(w.x == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(w.y == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(w.norm() < 0.25);
    CHECK(inside_inclusion_lattice(disk, {3.1, -2.1}));

    CHECK_FALSE(inside_inclusion_lattice(disk, {0.4, 0.4}));

    // (1,1) wraps to the cell center under the half-open convention, while
    // (0.5, 0.5) wraps to the corner (-0.5, -0.5).
    const Vec2 at_integer = periodic_wrap({1.0, 1.0});
    CHECK(at_integer.x == 0.0);
    CHECK(at_integer.y == 0.0);
    CHECK(inside_inclusion_lattice(disk, {1.0, 1.0}));
    CHECK(periodic_wrap({0.5, -0.5}).x == -0.5);
    CHECK(periodic_wrap({0.5, -0.5}).y == -0.5);
    CHECK_FALSE(inside_inclusion_lattice(disk, {0.5, 0.5}));
}

TEST_CASE("wrap is 1-periodic and lands in Y") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const Vec2 x{dist(rng), dist(rng)};
        const Vec2 w = periodic_wrap(x);
        CHECK(w.x >= -0.5);
        CHECK(w.x < 0.5);
        CHECK(w.y >= -0.5);
        CHECK(w.y < 0.5);
        const Vec2 shifted = periodic_wrap({x.x + 3.0, x.y - 7.0});
        CHECK(shifted.x == doctest::Approx(w.x).epsilon(1e-12));
        CHECK(shifted.y == doctest::Approx(w.y).epsilon(1e-12));
        const Vec2 delta = x - w;
        CHECK(std::abs(delta.x - std::round(delta.x)) < 1e-12);
        CHECK(std::abs(delta.y - std::round(delta.y)) < 1e-12);
    }
}

TEST_CASE("boundary projection and arc parameter") {
    const auto disk = CellGeometry::disk(0.25);
    const Vec2 p = disk.project_to_boundary({0.1, 0.1});
    CHECK(p.norm() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(disk.arc_parameter({0.25, 0.0}) == doctest::Approx(0.0));
    CHECK(disk.arc_parameter({0.0, 0.25}) == doctest::Approx(0.25));
    CHECK(disk.arc_parameter({-0.25, 0.0}) == doctest::Approx(0.5));

    const auto square = CellGeometry::square(0.25);
    const Vec2 q = square.project_to_boundary({0.3, 0.1});
    CHECK(q.x == doctest::Approx(0.25));
    CHECK(q.y == doctest::Approx(0.1));
    CHECK(square.signed_distance(q) == doctest::Approx(0.0));
}

TEST_CASE("macro geometry validation and edge classification") {
    MacroGeometry macro;
    macro.validate();
    CHECK(macro.classify_edge({0.0, 0.2}, {0.0, 0.4}) == MacroEdge::Left);
    CHECK(macro.classify_edge({1.0, 0.2}, {1.0, 0.4}) == MacroEdge::Right);
    CHECK(macro.classify_edge({0.2, 0.0}, {0.4, 0.0}) == MacroEdge::Bottom);
    CHECK(macro.classify_edge({0.2, 1.0}, {0.4, 1.0}) == MacroEdge::Top);
    CHECK_THROWS_AS((void)macro.classify_edge({0.5, 0.5}, {0.6, 0.5}), InvariantError);

    MacroGeometry bad = macro;
    bad.gamma1 = {false, false, false, false};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = macro;
    bad.x_max = bad.x_min;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

}  // TEST_SUITE
