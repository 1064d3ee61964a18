#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "perihom/harness.hpp"

namespace {

using namespace perihom;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    double tol = -1.0;
    int refine = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration file");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--tol", args.tol, "CG solver tolerance");
    cmd->add_option("--refine", args.refine, "extra cell-mesh refinements")
        ->check(CLI::NonNegativeNumber);
}

RunConfig load_config(const CommonArgs& args) {
    RunConfig cfg = args.config_path.empty() ? RunConfig{} : RunConfig::from_file(args.config_path);
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.tol > 0.0) cfg.tol = args.tol;
    cfg.extra_refine = args.refine;
    cfg.validate();
    return cfg;
}

void ensure_out(const RunConfig& cfg) { std::filesystem::create_directories(cfg.out_dir); }

int run_cell(const RunConfig& cfg) {
    Pipeline pipe(cfg);
    pipe.solve_cell();
    ensure_out(cfg);
    write_vtk(cfg.out_dir + "/cell_correctors.vtk", *pipe.cell_mesh,
              {{"chi_11", &pipe.correctors->chi(0, 0)},
               {"chi_22", &pipe.correctors->chi(1, 1)},
               {"chi_12", &pipe.correctors->chi(0, 1)}});
    std::cout << "cell mesh: " << pipe.cell_mesh->node_count() << " nodes, "
              << pipe.cell_mesh->triangle_count() << " triangles\n";
    for (auto [i, j] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{0, 1}}) {
        std::cout << "chi_" << i + 1 << j + 1
                  << ": L2 = " << format_double(l2_norm(*pipe.cell_mesh, pipe.correctors->chi(i, j)))
                  << ", cg iterations = " << pipe.correctors->report(i, j).iterations << "\n";
    }
    std::cout << "wrote " << cfg.out_dir << "/cell_correctors.vtk\n";
    return 0;
}

int run_effective(const RunConfig& cfg) {
    Pipeline pipe(cfg);
    pipe.build_effective();
    ensure_out(cfg);
    write_effective(cfg.out_dir + "/effective.txt", *pipe.model);
    std::cout << effective_to_text(*pipe.model);
    std::cout << "wrote " << cfg.out_dir << "/effective.txt\n";
    return 0;
}

int run_macro(const RunConfig& cfg) {
    Pipeline pipe(cfg);
    pipe.solve_macro();
    ensure_out(cfg);

    const MacroSolution& sol = *pipe.macro_sol;
    std::vector<Sym2> stress;
    stress.reserve(sol.strain.size());
    for (const auto& e : sol.strain) stress.push_back(pipe.model->hooke(e));
    write_vtk(cfg.out_dir + "/macro_u0.vtk", *pipe.plain_mesh, {{"u0", &sol.u0}},
              {{"sigma0", &stress}});

    std::ofstream csv(cfg.out_dir + "/macro.csv");
    csv << "h,dofs,iterations,compliance,l2_norm,h1_seminorm\n";
    csv << format_double(pipe.plain_mesh->h) << "," << 2 * pipe.plain_mesh->node_count() << ","
        << sol.report.iterations << "," << format_double(sol.compliance) << ","
        << format_double(l2_norm(*pipe.plain_mesh, sol.u0)) << ","
        << format_double(h1_seminorm(*pipe.plain_mesh, sol.u0)) << "\n";

    std::cout << "homogenized solve: " << sol.report.iterations
              << " cg iterations, compliance = " << format_double(sol.compliance) << "\n";
    std::cout << "wrote " << cfg.out_dir << "/macro_u0.vtk and macro.csv\n";
    return 0;
}

int run_fine(const RunConfig& cfg, double eps) {
    auto mesh = std::make_shared<Mesh>(generate_macro_mesh(cfg.macro, cfg.cell, eps, fine_mesh_h(eps, cfg.cell)));
    const FineSolution fine = solve_fine(mesh, cfg.material, cfg.load, cfg.tol,
                                         cfg.oscillating_f);
    ensure_out(cfg);
    write_vtk(cfg.out_dir + "/fine_u_eps.vtk", *mesh, {{"u_eps", &fine.u}});

    std::ostringstream row;
    row << "eps,h,dofs,iterations,energy_norm,h1_norm,surface_l2\n";
    row << format_double(eps) << "," << format_double(mesh->h) << "," << fine.dofs << ","
        << fine.report.iterations << "," << format_double(fine.energy_norm) << ","
        << format_double(fine.h1_norm) << "," << format_double(fine.surface_l2) << "\n";
    std::ofstream csv(cfg.out_dir + "/fine.csv");
    csv << row.str();
    std::cout << row.str();
    std::cout << "wrote " << cfg.out_dir << "/fine_u_eps.vtk and fine.csv\n";
    return 0;
}

int run_converge(const RunConfig& cfg) {
    const SweepReport report = run_pipeline(cfg);
    std::cout << report.csv();
    std::cout << "monotone_l2_rel = " << (report.monotone_l2_rel ? "true" : "false") << "\n";
    std::cout << "monotone_vol_gap = " << (report.monotone_vol_gap ? "true" : "false") << "\n";
    std::cout << "monotone_surf_gap = " << (report.monotone_surf_gap ? "true" : "false") << "\n";
    std::cout << "apriori_bounded = " << (report.apriori_bounded ? "true" : "false") << "\n";
    std::cout << "wrote " << cfg.out_dir << "/report.csv\n";
    return 0;
}

int run_twoscale(const RunConfig& cfg) {
    const std::string csv = run_twoscale_csv(cfg);
    ensure_out(cfg);
    std::ofstream out(cfg.out_dir + "/twoscale.csv");
    out << csv;
    std::cout << csv;
    std::cout << "wrote " << cfg.out_dir << "/twoscale.csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic homogenization toolkit: cell correctors, effective tensor, "
                 "homogenized and fine-scale solves, convergence diagnostics"};
    app.require_subcommand(1);

    CommonArgs args;
    double eps = 0.25;
    auto* cell = app.add_subcommand("cell", "solve the cell problems and dump correctors");
    auto* effective = app.add_subcommand("effective", "compute the effective model");
    auto* macro = app.add_subcommand("macro", "solve the homogenized problem");
    auto* fine = app.add_subcommand("fine", "solve the fine-scale problem at one eps");
    fine->add_option("--eps", eps, "scale parameter")->required();
    auto* converge = app.add_subcommand("converge", "full eps sweep with error norms");
    auto* twoscale = app.add_subcommand("twoscale", "two-scale pairing diagnostics");
    for (CLI::App* cmd : {cell, effective, macro, fine, converge, twoscale})
        add_common(cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        const RunConfig cfg = load_config(args);
        if (cell->parsed()) return run_cell(cfg);
        if (effective->parsed()) return run_effective(cfg);
        if (macro->parsed()) return run_macro(cfg);
        if (fine->parsed()) return run_fine(cfg, eps);
        if (converge->parsed()) return run_converge(cfg);
        if (twoscale->parsed()) return run_twoscale(cfg);
    } catch (const perihom::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const perihom::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const perihom::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
