#pragma once

#include <functional>

#include "perihom/fields.hpp"
#include "perihom/material.hpp"

namespace perihom {

// Inputs shared by the two-scale pairing diagnostics: a fine field on the
// perforated mesh, the macroscopic field on the plain mesh, and the cell
// mesh that carries the Y* and dT quadratures.
struct PairingContext {
    const Mesh* fine = nullptr;
    const NodalField* u_eps = nullptr;
    double eps = 0.0;
    const Mesh* macro = nullptr;
    const NodalField* u0 = nullptr;
    const Mesh* cell = nullptr;
    const MaterialSpec* mat = nullptr;  // needed for theta-weighted pairing
};

using MacroFn = std::function<double(Vec2)>;

// | int_{Omega^eps} u^c psi_m(x) psi_c(x/eps) dx
//   - int_Omega u0^c psi_m dx * int_{Y*} psi_c dy |
double volume_pairing_gap(const PairingContext& ctx, int component, const MacroFn& psi_macro,
                          const TrigPoly& psi_cell);

// | eps int_{dT^eps} [theta] u^c psi_m psi_c ds
//   - int_Omega u0^c psi_m dx * int_{dT} [theta] psi_c ds |
double surface_pairing_gap(const PairingContext& ctx, int component, const MacroFn& psi_macro,
                           const TrigPoly& psi_cell, bool theta_mode);

// Exact-geometry instance of the surface pairing with u = psi = 1:
// |Omega| |dT| - eps |dT^eps|, all closed-form.
double surface_measure_deficit(const MacroGeometry& macro, const CellGeometry& cell, double eps);

}  // namespace perihom
