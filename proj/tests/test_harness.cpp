#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "perihom/harness.hpp"

using namespace perihom;

namespace {

RunConfig small_config() {
    RunConfig cfg;
    cfg.cell_h = 1.0 / 16.0;
    cfg.macro_h = 1.0 / 32.0;
    cfg.eps_list = {0.25, 0.125};
    return cfg;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config defaults and file parsing") {
    const RunConfig cfg;
    CHECK(cfg.cell.shape == InclusionShape::Disk);
    CHECK(cfg.cell.size == 0.25);
    CHECK(cfg.eps_list.size() == 3);
    cfg.validate();

    const KeyValues kv = parse_config_text(
        "# comment\n"
        "cell.shape = square\n"
        "cell.size = 0.25\n"
        "macro.gamma1 = left,bottom\n"
        "material.lambda = 2.0   # inline comment\n"
        "run.eps_list = 0.5,0.25\n"
        "run.symmetric_mesh = true\n");
    const RunConfig parsed = RunConfig::from_keyvalues(kv);
    CHECK(parsed.cell.shape == InclusionShape::Square);
    CHECK(parsed.macro.gamma1[0]);
    CHECK(parsed.macro.gamma1[2]);
    CHECK_FALSE(parsed.macro.gamma1[1]);
    CHECK(parsed.material.lambda == 2.0);
    CHECK(parsed.symmetric_mesh);
    CHECK(parsed.eps_list == std::vector<double>{0.5, 0.25});
}

TEST_CASE("config rejections") {
    CHECK_THROWS_AS((void)RunConfig::from_keyvalues(parse_config_text("run.eps_list = 0.25,0.5\n")),
                    ConfigError);
    CHECK_THROWS_AS((void)RunConfig::from_keyvalues(parse_config_text("run.eps_list = 1.5\n")),
                    ConfigError);
    CHECK_THROWS_AS((void)RunConfig::from_keyvalues(parse_config_text("no.such.key = 1\n")),
                    ConfigError);
    CHECK_THROWS_AS((void)RunConfig::from_keyvalues(parse_config_text("cell.shape = hexagon\n")),
                    ConfigError);
    CHECK_THROWS_AS((void)RunConfig::from_keyvalues(parse_config_text("run.tol = nope\n")),
                    ConfigError);
    CHECK_THROWS_AS((void)parse_config_text("just a line without equals\n"), ConfigError);
    CHECK_THROWS_AS((void)RunConfig::from_file("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("reconstruction is the plain interpolant when correctors vanish") {
    RunConfig cfg = small_config();
    cfg.cell = CellGeometry::empty();
    Pipeline pipe(cfg);
    pipe.solve_macro();

    const double eps = 0.25;
    const Mesh fine_mesh = generate_macro_mesh(cfg.macro, cfg.cell, eps, fine_mesh_h(eps, cfg.cell));
    const MacroTrace trace = interpolate_macro(*pipe.macro_sol, fine_mesh);
    const NodalField rec = reconstruct(trace, *pipe.correctors, fine_mesh, eps);
    for (std::size_t i = 0; i < rec.values.size(); ++i) {
        CHECK(std::abs(rec.values[i].x - trace.u0.values[i].x) < 1e-12);
        CHECK(std::abs(rec.values[i].y - trace.u0.values[i].y) < 1e-12);
    }
}

TEST_CASE("reconstruction deviation is bounded by eps times measured constants") {
    RunConfig cfg = small_config();
    Pipeline pipe(cfg);
    pipe.solve_macro();

    const double eps = 0.125;
    const Mesh fine_mesh = generate_macro_mesh(cfg.macro, cfg.cell, eps, fine_mesh_h(eps, cfg.cell));
    const MacroTrace trace = interpolate_macro(*pipe.macro_sol, fine_mesh);
    const NodalField rec = reconstruct(trace, *pipe.correctors, fine_mesh, eps);

    double chi_inf = 0.0;
    for (auto [i, j] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{0, 1}})
        for (const auto& v : pipe.correctors->chi(i, j).values)
            chi_inf = std::max(chi_inf, std::max(std::abs(v.x), std::abs(v.y)));
    double strain_inf = 0.0;
    for (const auto& e : trace.strain)
        strain_inf = std::max(strain_inf,
                              std::abs(e.m11) + std::abs(e.m22) + 2.0 * std::abs(e.m12));

    const double l2 = l2_norm(fine_mesh, field_difference(rec, trace.u0));
    const double bound = eps * 2.0 * chi_inf * strain_inf * std::sqrt(fine_mesh.total_area());
    CHECK(l2 <= bound);
    CHECK(l2 > 0.0);
}

TEST_CASE("error norms vanish for identical fields") {
    RunConfig cfg = small_config();
    const Mesh mesh = generate_macro_mesh(cfg.macro, cfg.cell, 0.25, fine_mesh_h(0.25, cfg.cell));
    const NodalField f = NodalField::constant(mesh, {0.3, -0.7});
    const ErrorNorms err = error_norms(mesh, f, f, f);
    CHECK(err.l2 == 0.0);
    CHECK(err.l2_rel == 0.0);
    CHECK(err.h1_plain == 0.0);
    CHECK(err.h1_corrected == 0.0);
}

TEST_CASE("volume pairing: exact cancellation on the full domain") {
    RunConfig cfg = small_config();
    cfg.cell = CellGeometry::empty();
    Pipeline pipe(cfg);
    pipe.solve_macro();

    const double eps = 0.25;
    const Mesh fine_mesh = generate_macro_mesh(cfg.macro, cfg.cell, eps, 1.0 / 16.0);
    const NodalField ones = NodalField::constant(fine_mesh, {1.0, 1.0});
    const NodalField ones_macro = NodalField::constant(*pipe.plain_mesh, {1.0, 1.0});

    PairingContext ctx;
    ctx.fine = &fine_mesh;
    ctx.u_eps = &ones;
    ctx.eps = eps;
    ctx.macro = pipe.plain_mesh.get();
    ctx.u0 = &ones_macro;
    ctx.cell = pipe.cell_mesh.get();
    ctx.mat = &cfg.material;

    TrigPoly unit;
    unit.c0 = 1.0;
    CHECK(volume_pairing_gap(ctx, 0, [](Vec2) { return 1.0; }, unit) < 1e-12);
}

TEST_CASE("volume pairing: oscillation cancellation at rate O(eps)") {
    RunConfig cfg = small_config();
    Pipeline pipe(cfg);
    pipe.solve_macro();

    TrigPoly cos_y1;
    cos_y1.c0 = 0.0;
    cos_y1.terms.push_back({1, 0, false, 1.0});

    double prev = 1e300;
    for (double eps : {0.25, 0.125}) {
        const Mesh fine_mesh = generate_macro_mesh(cfg.macro, cfg.cell, eps, fine_mesh_h(eps, cfg.cell));
        const NodalField ones = NodalField::constant(fine_mesh, {1.0, 0.0});
        const NodalField ones_macro = NodalField::constant(*pipe.plain_mesh, {1.0, 0.0});
        PairingContext ctx;
        ctx.fine = &fine_mesh;
        ctx.u_eps = &ones;
        ctx.eps = eps;
        ctx.macro = pipe.plain_mesh.get();
        ctx.u0 = &ones_macro;
        ctx.cell = pipe.cell_mesh.get();
        ctx.mat = &cfg.material;
        const double gap = volume_pairing_gap(ctx, 0, [](Vec2) { return 1.0; }, cos_y1);
        CHECK(gap < 0.08);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("surface pairing with constant field matches the geometric deficit") {
    RunConfig cfg = small_config();
    Pipeline pipe(cfg);
    pipe.solve_cell();

    const double eps = 0.25;
    const Mesh fine_mesh = generate_macro_mesh(cfg.macro, cfg.cell, eps, fine_mesh_h(eps, cfg.cell));
    const Mesh plain = generate_plain_mesh(cfg.macro, cfg.macro_h);
    const NodalField ones = NodalField::constant(fine_mesh, {1.0, 0.0});
    const NodalField ones_macro = NodalField::constant(plain, {1.0, 0.0});

    PairingContext ctx;
    ctx.fine = &fine_mesh;
    ctx.u_eps = &ones;
    ctx.eps = eps;
    ctx.macro = &plain;
    ctx.u0 = &ones_macro;
    ctx.cell = pipe.cell_mesh.get();
    ctx.mat = &cfg.material;

    TrigPoly unit;
    unit.c0 = 1.0;
    const double gap = surface_pairing_gap(ctx, 0, [](Vec2) { return 1.0; }, unit, false);
    const double exact = surface_measure_deficit(cfg.macro, cfg.cell, eps);
    CHECK(exact == doctest::Approx((7.0 / 16.0) * (kPi / 2.0)).epsilon(1e-12));
    CHECK(gap == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("surface pairing: odd test function has vanishing limit term") {
    RunConfig cfg = small_config();
    Pipeline pipe(cfg);
    pipe.solve_cell();

    TrigPoly sin_y1;
    sin_y1.c0 = 0.0;
    sin_y1.terms.push_back({1, 0, true, 1.0});

    double prev = 1e300;
    for (double eps : {0.25, 0.125}) {
        const Mesh fine_mesh = generate_macro_mesh(cfg.macro, cfg.cell, eps, fine_mesh_h(eps, cfg.cell));
        const Mesh plain = generate_plain_mesh(cfg.macro, cfg.macro_h);
        const NodalField ones = NodalField::constant(fine_mesh, {1.0, 0.0});
        const NodalField ones_macro = NodalField::constant(plain, {1.0, 0.0});
        PairingContext ctx;
        ctx.fine = &fine_mesh;
        ctx.u_eps = &ones;
        ctx.eps = eps;
        ctx.macro = &plain;
        ctx.u0 = &ones_macro;
        ctx.cell = pipe.cell_mesh.get();
        ctx.mat = &cfg.material;
        const double gap = surface_pairing_gap(ctx, 0, [](Vec2) { return 1.0; }, sin_y1, false);
        CHECK(gap < 0.05);
        CHECK(gap <= prev + 1e-15);
        prev = gap;
    }
}

TEST_CASE("pipeline: deterministic rows, flags, artifacts") {
    RunConfig cfg = small_config();
    const auto tmp = std::filesystem::temp_directory_path() / "perihom_harness_out";
    std::filesystem::remove_all(tmp);
    cfg.out_dir = tmp.string();

    const SweepReport a = run_pipeline(cfg, true);
    const SweepReport b = run_pipeline(cfg, false);
    REQUIRE(a.rows.size() == 2);
    CHECK(a.csv() == b.csv());

    CHECK(std::filesystem::exists(tmp / "report.csv"));
    CHECK(std::filesystem::exists(tmp / "effective.txt"));
    CHECK(std::filesystem::exists(tmp / "cell_correctors.vtk"));
    CHECK(std::filesystem::exists(tmp / "macro_u0.vtk"));

    std::ifstream csv_file(tmp / "report.csv");
    std::string header;
    std::getline(csv_file, header);
    CHECK(header ==
          "eps,h,dofs,iterations,energy_norm,h1_norm,surface_l2,l2_err,l2_rel,h1_plain,"
          "h1_corrected,vol_gap,surf_gap");

    for (const auto& row : a.rows) {
        CHECK(row.l2_err >= 0.0);
        CHECK(row.vol_gap >= 0.0);
        CHECK(row.surf_gap >= 0.0);
        CHECK(row.dofs > 0);
    }
    CHECK(a.rows[1].l2_rel < a.rows[0].l2_rel);
    std::filesystem::remove_all(tmp);
}

TEST_CASE("the homogenized model beats tampered alternatives") {
    // Guards against vacuous convergence: the fine field must track u0
    // because of the corrector-based q and the emergent theta_tilde, not by
    // accident. Both tampered models must do visibly worse.
    RunConfig cfg;
    Pipeline pipe(cfg);
    pipe.solve_macro();
    const double eps = 0.0625;
    auto fine_mesh = std::make_shared<Mesh>(
        generate_macro_mesh(cfg.macro, cfg.cell, eps, fine_mesh_h(eps, cfg.cell)));
    const FineSolution fine = solve_fine(fine_mesh, cfg.material, cfg.load, cfg.tol);

    auto rel_err = [&](const MacroSolution& ms) {
        const MacroTrace tr = interpolate_macro(ms, *fine_mesh);
        return l2_norm(*fine_mesh, field_difference(fine.u, tr.u0)) /
               l2_norm(*fine_mesh, fine.u);
    };
    const double correct = rel_err(*pipe.macro_sol);

    EffectiveModel no_robin = *pipe.model;
    no_robin.theta_tilde = 0.0;
    const double without_robin =
        rel_err(solve_homogenized(no_robin, pipe.plain_mesh, cfg.load, cfg.tol));

    EffectiveModel voigt_q = *pipe.model;
    voigt_q.q_mandel = voigt_tensor(*pipe.correctors);
    const double without_correctors =
        rel_err(solve_homogenized(voigt_q, pipe.plain_mesh, cfg.load, cfg.tol));

    CHECK(correct < 0.15);
    CHECK(without_robin > 2.0 * correct);
    CHECK(without_correctors > 1.5 * correct);
}

TEST_CASE("effective model regression against the extrapolated fixture") {
    const EffectiveModel fixture = read_effective(std::string(PERIHOM_FIXTURE_DIR) +
                                                  "/effective_disk_r025_iso11.txt");
    // One refinement past the default cell resolution stays within 1% of the
    // Richardson-extrapolated reference.
    RunConfig cfg;
    cfg.extra_refine = 1;
    Pipeline pipe(cfg);
    pipe.build_effective();
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            diff += std::pow(pipe.model->q_mandel(i, j) - fixture.q_mandel(i, j), 2);
            scale += std::pow(fixture.q_mandel(i, j), 2);
        }
    CHECK(std::sqrt(diff / scale) <= 0.01);
    CHECK(pipe.model->theta_tilde == doctest::Approx(fixture.theta_tilde).epsilon(1e-3));
}

TEST_CASE("default sweep a priori quantities match the recorded fixture") {
    std::ifstream in(std::string(PERIHOM_FIXTURE_DIR) + "/default_sweep.csv");
    REQUIRE(in.good());
    std::string line;
    std::vector<std::array<double, 3>> expected;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'e') continue;
        std::array<double, 3> row{};
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &row[0], &row[1], &row[2]) == 3);
        expected.push_back(row);
    }
    REQUIRE(expected.size() == 3);

    const RunConfig cfg;  // bundled defaults
    const SweepReport report = run_pipeline(cfg, false);
    REQUIRE(report.rows.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(report.rows[i].eps == doctest::Approx(expected[i][0]).epsilon(1e-12));
        CHECK(report.rows[i].h1_norm == doctest::Approx(expected[i][1]).epsilon(1e-6));
        CHECK(report.rows[i].surface_l2 == doctest::Approx(expected[i][2]).epsilon(1e-6));
    }
}

TEST_CASE("vtk writer emits a well-formed unstructured grid") {
    const Mesh m = generate_cell_mesh(CellGeometry::empty(), 0.5);
    const auto path = std::filesystem::temp_directory_path() / "perihom_vtk_test.vtk";
    const NodalField f = NodalField::constant(m, {1.0, 2.0});
    write_vtk(path.string(), m, {{"u", &f}});

    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("# vtk DataFile Version 3.0") == 0);
    CHECK(text.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
    CHECK(text.find("POINTS 9 double") != std::string::npos);
    CHECK(text.find("CELLS 8 32") != std::string::npos);
    CHECK(text.find("CELL_TYPES 8") != std::string::npos);
    CHECK(text.find("VECTORS u double") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("twoscale table is produced for every eps") {
    RunConfig cfg = small_config();
    const std::string csv = run_twoscale_csv(cfg);
    CHECK(csv.find("eps,vol_gap_const,vol_gap_osc,surf_gap_theta,surf_deficit_exact") == 0);
    int lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 3);  // header + 2 eps rows
}

}  // TEST_SUITE
