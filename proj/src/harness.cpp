#include "perihom/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace perihom {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(s);
    while (std::getline(in, token, sep)) out.push_back(token);
    return out;
}

// "k:cos:amp" or "k1:k2:sin:amp" entries, comma separated.
std::vector<TrigTerm> parse_terms(const std::string& text, bool two_indices,
                                  const std::string& key) {
    std::vector<TrigTerm> out;
    if (text.empty()) return out;
    for (const std::string& entry : split(text, ',')) {
        const auto parts = split(entry, ':');
        const std::size_t expect = two_indices ? 4 : 3;
        if (parts.size() != expect)
            throw ConfigError("config key '" + key + "': bad term '" + entry + "'");
        try {
            TrigTerm t;
            std::size_t p = 0;
            t.k1 = std::stoi(parts[p++]);
            t.k2 = two_indices ? std::stoi(parts[p++]) : 0;
            const std::string& kind = parts[p++];
            if (kind == "cos")
                t.use_sin = false;
            else if (kind == "sin")
                t.use_sin = true;
            else
                throw std::invalid_argument("kind");
            t.amp = std::stod(parts[p]);
            out.push_back(t);
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': bad term '" + entry + "'");
        }
    }
    return out;
}

Vec2 parse_vec2(const KeyValues& kv, const std::string& key, Vec2 fallback) {
    const auto v = get_doubles(kv, key, {fallback.x, fallback.y});
    if (v.size() != 2) throw ConfigError("config key '" + key + "' needs two components");
    return {v[0], v[1]};
}

const std::set<std::string> kKnownKeys = {
    "cell.shape",          "cell.size",          "macro.x_min",        "macro.x_max",
    "macro.y_min",         "macro.y_max",        "macro.gamma1",       "material.model",
    "material.lambda",     "material.mu",        "material.blocks",    "material.blocks_div",
    "material.theta0",     "material.theta_terms", "material.alpha0",  "load.f",
    "load.f1_terms",       "load.f2_terms",      "load.t_left",        "load.t_right",
    "load.t_bottom",       "load.t_top",         "run.eps_list",       "run.cell_h",
    "run.macro_h",         "run.tol",            "run.symmetric_mesh", "run.oscillating_f",
    "output.dir"};

}  // namespace

RunConfig RunConfig::from_keyvalues(const KeyValues& kv) {
    for (const auto& [key, value] : kv)
        if (!kKnownKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");

    RunConfig cfg;
    const std::string shape = get_string(kv, "cell.shape", "disk");
    const double size = get_double(kv, "cell.size", 0.25);
    if (shape == "disk")
        cfg.cell = CellGeometry::disk(size);
    else if (shape == "square")
        cfg.cell = CellGeometry::square(size);
    else if (shape == "empty")
        cfg.cell = CellGeometry::empty();
    else
        throw ConfigError("cell.shape must be disk, square or empty");

    cfg.macro.x_min = get_double(kv, "macro.x_min", 0.0);
    cfg.macro.x_max = get_double(kv, "macro.x_max", 1.0);
    cfg.macro.y_min = get_double(kv, "macro.y_min", 0.0);
    cfg.macro.y_max = get_double(kv, "macro.y_max", 1.0);
    const std::string g1 = get_string(kv, "macro.gamma1", "left");
    cfg.macro.gamma1 = {false, false, false, false};
    for (const std::string& edge : split(g1, ',')) {
        if (edge == "left")
            cfg.macro.gamma1[0] = true;
        else if (edge == "right")
            cfg.macro.gamma1[1] = true;
        else if (edge == "bottom")
            cfg.macro.gamma1[2] = true;
        else if (edge == "top")
            cfg.macro.gamma1[3] = true;
        else
            throw ConfigError("macro.gamma1: unknown edge '" + edge + "'");
    }

    const std::string model = get_string(kv, "material.model", "isotropic");
    if (model == "isotropic") {
        cfg.material = MaterialSpec::isotropic(get_double(kv, "material.lambda", 1.0),
                                               get_double(kv, "material.mu", 1.0));
    } else if (model == "blocks") {
        const int div = static_cast<int>(get_double(kv, "material.blocks_div", 2));
        const std::string blocks = get_string(kv, "material.blocks", "");
        std::vector<Mat3> mats;
        double alpha = 1e300;
        for (const std::string& entry : split(blocks, ';')) {
            const auto lm = split(entry, ',');
            if (lm.size() != 2) throw ConfigError("material.blocks: bad entry '" + entry + "'");
            const double l = std::stod(lm[0]), m = std::stod(lm[1]);
            if (!(m > 0.0) || l < 0.0)
                throw ConfigError("material.blocks: need mu > 0 and lambda >= 0");
            mats.push_back(MaterialSpec::isotropic_mandel(l, m));
            alpha = std::min(alpha, 2.0 * m);
        }
        cfg.material = MaterialSpec::block_grid(div, std::move(mats), alpha);
    } else {
        throw ConfigError("material.model must be isotropic or blocks");
    }

    ArcPoly theta;
    theta.c0 = get_double(kv, "material.theta0", 1.0);
    theta.terms = parse_terms(get_string(kv, "material.theta_terms", ""), false,
                              "material.theta_terms");
    const double theta_min = theta.min_sampled();
    if (!(theta_min > 0.0)) throw ConfigError("theta must be strictly positive on dT");
    const double alpha0 = get_double(kv, "material.alpha0", theta_min);
    cfg.material.with_theta(std::move(theta), alpha0);

    const Vec2 f = parse_vec2(kv, "load.f", {0.0, -1.0});
    cfg.load = LoadSpec::constant(f);
    cfg.load.f1.terms = parse_terms(get_string(kv, "load.f1_terms", ""), true, "load.f1_terms");
    cfg.load.f2.terms = parse_terms(get_string(kv, "load.f2_terms", ""), true, "load.f2_terms");
    cfg.load.traction[0] = parse_vec2(kv, "load.t_left", {0.0, 0.0});
    cfg.load.traction[1] = parse_vec2(kv, "load.t_right", {0.0, 0.0});
    cfg.load.traction[2] = parse_vec2(kv, "load.t_bottom", {0.0, 0.0});
    cfg.load.traction[3] = parse_vec2(kv, "load.t_top", {0.0, 0.0});

    cfg.eps_list = get_doubles(kv, "run.eps_list", cfg.eps_list);
    cfg.cell_h = get_double(kv, "run.cell_h", cfg.cell_h);
    cfg.macro_h = get_double(kv, "run.macro_h", cfg.macro_h);
    cfg.tol = get_double(kv, "run.tol", cfg.tol);
    cfg.symmetric_mesh = get_bool(kv, "run.symmetric_mesh", false);
    cfg.oscillating_f = get_bool(kv, "run.oscillating_f", false);
    cfg.out_dir = get_string(kv, "output.dir", cfg.out_dir);
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    return from_keyvalues(parse_config_file(path));
}

void RunConfig::validate() const {
    macro.validate();
    material.validate();
    if (eps_list.empty()) throw ConfigError("eps_list must not be empty");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0 && eps_list[i] < 1.0))
            throw ConfigError("eps_list entries must lie in (0,1)");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw ConfigError("eps_list must be strictly decreasing");
    }
    if (!(cell_h > 0.0) || !(macro_h > 0.0)) throw ConfigError("mesh sizes must be positive");
    if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("tol must lie in (0,1)");
    if (extra_refine < 0) throw ConfigError("refine count must be nonnegative");
}

MacroTrace interpolate_macro(const MacroSolution& macro_sol, const Mesh& fine_mesh) {
    const PointLocator locator(*macro_sol.mesh);
    MacroTrace trace;
    trace.u0.values.reserve(fine_mesh.nodes.size());
    trace.strain.reserve(fine_mesh.nodes.size());
    for (const Vec2& x : fine_mesh.nodes) {
        const LocateHit hit = locator.locate(x);
        trace.u0.values.push_back(interpolate(*macro_sol.mesh, macro_sol.u0, hit));
        trace.strain.push_back(macro_sol.strain[static_cast<std::size_t>(hit.triangle)]);
    }
    return trace;
}

NodalField reconstruct(const MacroTrace& trace, const CorrectorSet& set, const Mesh& fine_mesh,
                       double eps) {
    NodalField rec = trace.u0;
    for (std::size_t n = 0; n < fine_mesh.nodes.size(); ++n) {
        const Vec2 y = fine_mesh.nodes[n] / eps;
        const Sym2 e = trace.strain[n];
        Vec2 corr = set.evaluate_extended(0, 0, y) * e.m11 +
                    set.evaluate_extended(1, 1, y) * e.m22 +
                    set.evaluate_extended(0, 1, y) * (2.0 * e.m12);
        rec.values[n] -= corr * eps;
    }
    return rec;
}

ErrorNorms error_norms(const Mesh& fine_mesh, const NodalField& u_eps, const NodalField& iu0,
                       const NodalField& u_rec) {
    ErrorNorms out;
    const NodalField diff_plain = field_difference(u_eps, iu0);
    out.l2 = l2_norm(fine_mesh, diff_plain);
    const double denom = l2_norm(fine_mesh, u_eps);
    out.l2_rel = denom > 0.0 ? out.l2 / denom : 0.0;
    out.h1_plain = h1_seminorm(fine_mesh, diff_plain);
    out.h1_corrected = h1_seminorm(fine_mesh, field_difference(u_eps, u_rec));
    return out;
}

Pipeline::Pipeline(RunConfig cfg_) : cfg(std::move(cfg_)) { cfg.validate(); }

void Pipeline::solve_cell() {
    Mesh m = generate_cell_mesh(cfg.cell, cfg.cell_h, cfg.symmetric_mesh);
    for (int r = 0; r < cfg.extra_refine; ++r) m = refine(m);
    cell_mesh = std::make_shared<Mesh>(std::move(m));
    correctors.emplace(solve_correctors(cell_mesh, cfg.material, cfg.tol));
}

void Pipeline::build_effective() {
    if (!correctors) solve_cell();
    model.emplace(EffectiveModel::build(*correctors, cfg.load));
}

void Pipeline::solve_macro() {
    if (!model) build_effective();
    plain_mesh = std::make_shared<Mesh>(generate_plain_mesh(cfg.macro, cfg.macro_h));
    macro_sol.emplace(solve_homogenized(*model, plain_mesh, cfg.load, cfg.tol));
}

SweepRow Pipeline::run_eps(double eps) {
    if (!macro_sol) solve_macro();
    const double fine_h = fine_mesh_h(eps, cfg.cell);
    auto fine_mesh = std::make_shared<Mesh>(
        generate_macro_mesh(cfg.macro, cfg.cell, eps, fine_h));
    const FineSolution fine = solve_fine(fine_mesh, cfg.material, cfg.load, cfg.tol,
                                         cfg.oscillating_f);

    const MacroTrace trace = interpolate_macro(*macro_sol, *fine_mesh);
    const NodalField u_rec = reconstruct(trace, *correctors, *fine_mesh, eps);
    const ErrorNorms err = error_norms(*fine_mesh, fine.u, trace.u0, u_rec);

    PairingContext ctx;
    ctx.fine = fine_mesh.get();
    ctx.u_eps = &fine.u;
    ctx.eps = eps;
    ctx.macro = plain_mesh.get();
    ctx.u0 = &macro_sol->u0;
    ctx.cell = cell_mesh.get();
    ctx.mat = &cfg.material;
    const auto one = [](Vec2) { return 1.0; };
    TrigPoly cos_y1;
    cos_y1.c0 = 0.0;
    cos_y1.terms.push_back({1, 0, false, 1.0});
    TrigPoly unit;
    unit.c0 = 1.0;

    SweepRow row;
    row.eps = eps;
    row.h = fine_mesh->h;
    row.dofs = fine.dofs;
    row.iterations = fine.report.iterations;
    row.energy_norm = fine.energy_norm;
    row.h1_norm = fine.h1_norm;
    row.surface_l2 = fine.surface_l2;
    row.l2_err = err.l2;
    row.l2_rel = err.l2_rel;
    row.h1_plain = err.h1_plain;
    row.h1_corrected = err.h1_corrected;
    row.vol_gap = volume_pairing_gap(ctx, 1, one, cos_y1);
    row.surf_gap = cfg.cell.is_empty() ? 0.0 : surface_pairing_gap(ctx, 1, one, unit, true);
    return row;
}

std::string SweepReport::csv() const {
    std::ostringstream out;
    out << "eps,h,dofs,iterations,energy_norm,h1_norm,surface_l2,"
           "l2_err,l2_rel,h1_plain,h1_corrected,vol_gap,surf_gap\n";
    for (const auto& r : rows) {
        out << format_double(r.eps) << "," << format_double(r.h) << "," << r.dofs << ","
            << r.iterations << "," << format_double(r.energy_norm) << ","
            << format_double(r.h1_norm) << "," << format_double(r.surface_l2) << ","
            << format_double(r.l2_err) << "," << format_double(r.l2_rel) << ","
            << format_double(r.h1_plain) << "," << format_double(r.h1_corrected) << ","
            << format_double(r.vol_gap) << "," << format_double(r.surf_gap) << "\n";
    }
    return out.str();
}

SweepReport run_pipeline(const RunConfig& cfg, bool write_outputs) {
    Pipeline pipe(cfg);
    pipe.solve_macro();

    SweepReport report;
    report.model = *pipe.model;
    for (double eps : cfg.eps_list) report.rows.push_back(pipe.run_eps(eps));

    auto strictly_decreasing = [&](auto get) {
        for (std::size_t i = 1; i < report.rows.size(); ++i)
            if (!(get(report.rows[i]) < get(report.rows[i - 1]))) return false;
        return true;
    };
    report.monotone_l2_rel = strictly_decreasing([](const SweepRow& r) { return r.l2_rel; });
    report.monotone_vol_gap = strictly_decreasing([](const SweepRow& r) { return r.vol_gap; });
    report.monotone_surf_gap = strictly_decreasing([](const SweepRow& r) { return r.surf_gap; });

    double first_two = 0.0, overall_h1 = 0.0, overall_surf = 0.0, first_two_surf = 0.0;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        overall_h1 = std::max(overall_h1, report.rows[i].h1_norm);
        overall_surf = std::max(overall_surf, report.rows[i].surface_l2);
        if (i < 2) {
            first_two = std::max(first_two, report.rows[i].h1_norm);
            first_two_surf = std::max(first_two_surf, report.rows[i].surface_l2);
        }
    }
    report.apriori_bounded =
        overall_h1 <= 1.05 * first_two && overall_surf <= 1.05 * first_two_surf;

    if (write_outputs) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        std::ofstream csv(cfg.out_dir + "/report.csv");
        csv << report.csv();
        write_effective(cfg.out_dir + "/effective.txt", report.model);
        write_vtk(cfg.out_dir + "/cell_correctors.vtk", *pipe.cell_mesh,
                  {{"chi_11", &pipe.correctors->chi(0, 0)},
                   {"chi_22", &pipe.correctors->chi(1, 1)},
                   {"chi_12", &pipe.correctors->chi(0, 1)}});
        write_vtk(cfg.out_dir + "/macro_u0.vtk", *pipe.plain_mesh, {{"u0", &pipe.macro_sol->u0}});
    }
    return report;
}

std::string run_twoscale_csv(const RunConfig& cfg) {
    Pipeline pipe(cfg);
    pipe.solve_macro();

    std::ostringstream out;
    out << "eps,vol_gap_const,vol_gap_osc,surf_gap_theta,surf_deficit_exact\n";
    const auto one = [](Vec2) { return 1.0; };
    TrigPoly unit;
    unit.c0 = 1.0;
    TrigPoly cos_y1;
    cos_y1.c0 = 0.0;
    cos_y1.terms.push_back({1, 0, false, 1.0});

    for (double eps : cfg.eps_list) {
        auto fine_mesh = std::make_shared<Mesh>(
            generate_macro_mesh(cfg.macro, cfg.cell, eps, fine_mesh_h(eps, cfg.cell)));
        const FineSolution fine = solve_fine(fine_mesh, cfg.material, cfg.load, cfg.tol,
                                             cfg.oscillating_f);
        PairingContext ctx;
        ctx.fine = fine_mesh.get();
        ctx.u_eps = &fine.u;
        ctx.eps = eps;
        ctx.macro = pipe.plain_mesh.get();
        ctx.u0 = &pipe.macro_sol->u0;
        ctx.cell = pipe.cell_mesh.get();
        ctx.mat = &cfg.material;
        const double deficit =
            cfg.cell.is_empty() ? 0.0 : surface_measure_deficit(cfg.macro, cfg.cell, eps);
        out << format_double(eps) << "," << format_double(volume_pairing_gap(ctx, 1, one, unit))
            << "," << format_double(volume_pairing_gap(ctx, 1, one, cos_y1)) << ","
            << format_double(cfg.cell.is_empty()
                                 ? 0.0
                                 : surface_pairing_gap(ctx, 1, one, unit, true))
            << "," << format_double(deficit) << "\n";
    }
    return out.str();
}

}  // namespace perihom
