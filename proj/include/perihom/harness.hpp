#pragma once

#include <optional>
#include <string>

#include "perihom/fine_solver.hpp"
#include "perihom/io.hpp"
#include "perihom/macro_solver.hpp"
#include "perihom/pairing.hpp"

namespace perihom {

// Everything one experiment needs; defaults reproduce the bundled
// configuration (unit square clamped on the left, disk inclusions r = 1/4,
// lambda = mu = 1, theta = 1, f = (0,-1), eps sweep 1/4, 1/8, 1/16).
struct RunConfig {
    CellGeometry cell = CellGeometry::disk(0.25);
    MacroGeometry macro;
    MaterialSpec material = MaterialSpec::isotropic(1.0, 1.0);
    LoadSpec load = LoadSpec::constant({0.0, -1.0});

    std::vector<double> eps_list = {0.25, 0.125, 0.0625};
    double cell_h = 1.0 / 32.0;
    double macro_h = 1.0 / 64.0;
    double tol = 1e-10;
    std::string out_dir = "out";
    bool symmetric_mesh = false;
    bool oscillating_f = false;
    int extra_refine = 0;  // additional cell-mesh refinements (CLI --refine)

    static RunConfig from_keyvalues(const KeyValues& kv);
    static RunConfig from_file(const std::string& path);
    void validate() const;
};

// Fine-mesh spacing for one eps. One tenth of the period keeps every disk
// hole of the default geometry resolved with at least 16 boundary segments;
// squares use eps/8 so the grid aligns with the inclusion faces.
inline double fine_mesh_h(double eps, const CellGeometry& cell) {
    return cell.shape == InclusionShape::Square ? eps / 8.0 : eps / 10.0;
}

struct SweepRow {
    double eps = 0.0, h = 0.0;
    int dofs = 0;
    long iterations = 0;
    double energy_norm = 0.0, h1_norm = 0.0, surface_l2 = 0.0;
    double l2_err = 0.0, l2_rel = 0.0, h1_plain = 0.0, h1_corrected = 0.0;
    double vol_gap = 0.0, surf_gap = 0.0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    EffectiveModel model;
    bool monotone_l2_rel = false;
    bool monotone_vol_gap = false;
    bool monotone_surf_gap = false;
    bool apriori_bounded = false;

    std::string csv() const;  // header line + one row per eps
};

// The macroscopic solution sampled at the nodes of a fine mesh: values and
// the strain of the containing macro element (lowest element index on ties).
struct MacroTrace {
    NodalField u0;
    std::vector<Sym2> strain;
};

MacroTrace interpolate_macro(const MacroSolution& macro_sol, const Mesh& fine_mesh);

// First-order reconstruction at the fine-mesh nodes:
// u0(x) - eps * sum_ij e_ij(u0)(x) chi^ij(wrap(x/eps)).
NodalField reconstruct(const MacroTrace& trace, const CorrectorSet& set, const Mesh& fine_mesh,
                       double eps);

struct ErrorNorms {
    double l2 = 0.0, l2_rel = 0.0, h1_plain = 0.0, h1_corrected = 0.0;
};

ErrorNorms error_norms(const Mesh& fine_mesh, const NodalField& u_eps, const NodalField& iu0,
                       const NodalField& u_rec);

// The assembled pipeline state reused by the CLI subcommands.
struct Pipeline {
    RunConfig cfg;
    std::shared_ptr<const Mesh> cell_mesh;
    std::optional<CorrectorSet> correctors;
    std::optional<EffectiveModel> model;
    std::shared_ptr<const Mesh> plain_mesh;
    std::optional<MacroSolution> macro_sol;

    explicit Pipeline(RunConfig cfg_);
    void solve_cell();        // cell mesh + correctors
    void build_effective();   // + effective model
    void solve_macro();       // + homogenized solve
    SweepRow run_eps(double eps);  // one fine solve with all diagnostics
};

// Full experiment: correctors -> effective model -> macro solve -> eps sweep
// with error norms and pairing gaps. Artifacts (report.csv, effective.txt,
// VTK fields) are written into cfg.out_dir when write_outputs is set.
SweepReport run_pipeline(const RunConfig& cfg, bool write_outputs = true);

// Pairing diagnostics table for the solved sweep (twoscale subcommand).
std::string run_twoscale_csv(const RunConfig& cfg);

}  // namespace perihom
